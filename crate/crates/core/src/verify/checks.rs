//! Per-instance checks. Each returns the list of inequalities it evaluated;
//! hypothesis failures are reported as failed checks, not errors.

use num_rational::Ratio;

use crate::bits::{all_vars, format_bits, Input};
use crate::blocks::BlockFamily;
use crate::dnf::{bounds_report, check_compact_form, stats, Dnf, Mixing};
use crate::error::{Error, Result};
use crate::families::{proposition_pair, FamilyInstance, FamilyKind};
use crate::limits::Limits;
use crate::lowsens::{
    agreement_radius, hypercubes_to_dnf, one_set_components, reconstruct_majority,
    reconstruct_monotone, AgreementRadius, BallValues,
};
use crate::measures::{
    block_count_at, block_sensitivity_at, block_sensitivity_report, bs_capped, sensitivity_at,
    sensitivity_report, MeasureReport,
};
use crate::table::{is_monotone, xor_tt, TruthTable};
use crate::verify::generate::shift_to_bs0;
use crate::verify::Checks;
use crate::witness::{
    ones_bound, solve_sensitivity_problem, tblock_bound, witness_2mixing_components,
    witness_onesbound, zero_bound, zero_witness_block, zero_witness_tblock, FunctionRef,
    WitnessResult,
};

fn witness_checks(c: &mut Checks, label: &str, w: &WitnessResult, f: &TruthTable) {
    let measured = sensitivity_at(f, w.input);
    c.holds(
        format!("{label}: side"),
        f.get(w.input) == w.side.value(),
        format!("f({}) = {}", format_bits(w.input, f.arity()), f.get(w.input) as u8),
    );
    c.eq(format!("{label}: measured"), w.measured, measured);
    c.le(format!("{label}: bound <= s(f, y)"), w.guaranteed_bound, measured);
}

fn solver_checks(c: &mut Checks, f: &TruthTable, x: Input, blocks: &BlockFamily, limits: &Limits) -> Result<()> {
    let label = format!("solver at {}", format_bits(x, f.arity()));
    let solution = solve_sensitivity_problem(FunctionRef::Table(f), x, blocks, Ratio::from_integer(4), limits)?;
    let s = sensitivity_at(f, solution.y);
    let k = block_count_at(f, x, blocks)?;
    c.holds(
        format!("{label}: 4 s(f, y)^2 >= bs(f, x, B)"),
        4 * s * s >= k && solution.sensitivity == s && solution.block_count == k,
        format!("4 * {s}^2 >= {k} via {}", solution.procedure),
    );
    Ok(())
}

fn block_hypotheses(c: &mut Checks, d: &Dnf, limits: &Limits) -> Result<crate::dnf::CompactFormReport> {
    c.holds("block property", stats(d).block, "positive sets pairwise disjoint");
    let cf = check_compact_form(d, limits)?;
    c.holds("compact form", cf.is_compact(), cf.failures().join("; "));
    Ok(cf)
}

/// Block-property compact forms: `bs0 = size`, `bs0 <= 4 s^2`, both sensitivity
/// lower bounds, the two witnesses and the sensitivity-problem solver at `c = 4`.
pub fn check_block_4s2(d: &Dnf, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let cf = block_hypotheses(&mut c, d, limits)?;
    if !c.passed() {
        return Ok(c);
    }
    let f = d.to_truth_table(limits)?;
    let r = block_sensitivity_report(&f, limits)?;
    let (size, width, s) = (d.size(), d.width(), r.s());
    let bs0 = r.bs0().unwrap_or(0);
    c.eq("bs0 = size", bs0, size);
    c.le("bs0 <= 4 s^2", bs0, 4 * s * s);
    c.le("ceil(size / (2 width - 1)) <= s", zero_bound(size, width), s);
    c.le("ceil(width / 2) <= s", ones_bound(width), s);
    if cf.normalized {
        c.le("bs <= 4 s^2", r.bs().unwrap_or(0), 4 * s * s);
    }
    let z = zero_witness_block(d)?;
    witness_checks(&mut c, "zero witness", &z, &f);
    c.le("zero witness: ceil(size / (2 width - 1)) <= bound", zero_bound(size, width), z.guaranteed_bound);
    let o = witness_onesbound(d)?;
    witness_checks(&mut c, "onesbound witness", &o, &f);

    let (_, at_zero) = block_sensitivity_at(&f, 0, limits)?;
    solver_checks(&mut c, &f, 0, &at_zero, limits)?;
    if let Some(w) = r.witness_bs() {
        solver_checks(&mut c, &f, w.input, &w.blocks, limits)?;
    }
    Ok(c)
}

/// `t`-block compact forms, `t` being the largest positive occurrence count.
pub fn check_tblock(d: &Dnf, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let t = stats(d).t_min;
    let cf = check_compact_form(d, limits)?;
    c.holds("compact form", cf.is_compact(), cf.failures().join("; "));
    if !c.passed() {
        return Ok(c);
    }
    let f = d.to_truth_table(limits)?;
    let r = block_sensitivity_report(&f, limits)?;
    let (size, width, s) = (d.size(), d.width(), r.s());
    let bs0 = r.bs0().unwrap_or(0);
    c.le("bs0 <= size", bs0, size);
    let w = zero_witness_tblock(d, t)?;
    witness_checks(&mut c, &format!("{t}-block witness"), &w, &f);
    c.le("tblock bound <= witness bound", tblock_bound(size, width, t), w.guaranteed_bound);
    // eps = 1: t <= size / width^2
    if t * width * width <= size {
        c.le("bs0 <= t (3s)^2", bs0, t * (3 * s).pow(2));
    }
    // eps = 1/2: t <= size / width^(3/2)
    if t * t * width.pow(3) <= size * size {
        c.le("bs0 <= t (3s)^3", bs0, t * (3 * s).pow(3));
    }
    Ok(c)
}

/// `width - gamma <= s1 <= width`, with equality and `gamma = 0` under 2-mixing.
pub fn check_gamma(d: &Dnf, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let f = d.to_truth_table(limits)?;
    let b = bounds_report(d, &f, limits)?;
    c.holds("compact form", b.compact.is_compact(), b.compact.failures().join("; "));
    let s1 = b.s1.unwrap_or(0);
    c.holds("width - gamma <= s1", b.lower_ok, format!("{} - {} <= {s1}", b.width, b.gamma));
    c.holds("s1 <= width", b.upper_ok, format!("{s1} <= {}", b.width));
    if b.mixing_max.at_least(2) {
        c.eq("2-mixing: gamma = 0", b.gamma, 0);
        c.eq("2-mixing: s1 = width", s1, b.width);
    }
    Ok(c)
}

/// `bs_ℓ <= e s^ℓ / (ℓ-1)!` for `ℓ` in `2..=s`, plus monotonicity in `ℓ`.
pub fn check_kenyon_kutin(f: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let r = block_sensitivity_report(f, limits)?;
    let (s, bs) = (r.s(), r.bs().unwrap_or(0));
    c.le("s <= bs", s, bs);
    let n = f.arity();
    if n == 0 || r.block.is_none() {
        return Ok(c);
    }
    let capped: Vec<usize> = (1..=n).map(|l| bs_capped(f, l, limits)).collect::<Result<_>>()?;
    c.eq("bs_1 = s", capped[0], s);
    c.eq("bs_n = bs", capped[n - 1], bs);
    c.holds(
        "bs_l non-decreasing",
        capped.windows(2).all(|w| w[0] <= w[1]),
        format!("{capped:?}"),
    );
    let mut factorial = 1.0f64;
    for l in 2..=s.min(n) {
        factorial *= (l - 1) as f64;
        let bound = std::f64::consts::E * (s as f64).powi(l as i32) / factorial;
        let value = capped[l - 1];
        c.holds(
            format!("bs_{l} <= e s^{l} / {}!", l - 1),
            (value as f64) <= bound,
            format!("{value} <= {bound:.3}"),
        );
    }
    Ok(c)
}

/// Normalized block + transitive + 2-mixing on at least two relevant variables:
/// `3 bs <= 2 s^2 - s` and the component witness.
pub fn check_mixing(d: &Dnf, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let st = stats(d);
    c.holds("block property", st.block, "");
    c.holds("transitive property", st.transitive, "");
    c.holds("2-mixing", st.mixing_max.at_least(2), format!("mixing {}", st.mixing_max));
    let cf = check_compact_form(d, limits)?;
    c.holds("normalized compact form", cf.is_normalized_compact(), cf.failures().join("; "));
    let f = d.to_truth_table(limits)?;
    let relevant = f.relevant_variables().len();
    c.le("two relevant variables", 2, relevant);
    if !c.passed() {
        return Ok(c);
    }
    let r = block_sensitivity_report(&f, limits)?;
    let (s, bs) = (r.s(), r.bs().unwrap_or(0));
    c.holds(
        "3 bs <= 2 s^2 - s",
        3 * bs + s <= 2 * s * s,
        format!("3 * {bs} <= 2 * {s}^2 - {s}"),
    );
    let w = witness_2mixing_components(d)?;
    witness_checks(&mut c, "mixing witness", &w, &f);
    Ok(c)
}

/// `s >= n^(1/3) / 2` over the relevant variables of a block-property formula.
pub fn check_senslower(d: &Dnf, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    c.holds("block property", stats(d).block, "");
    let f = d.to_truth_table(limits)?;
    let n = f.relevant_variables().len();
    let s = sensitivity_report(&f, limits)?.s();
    c.holds("(2s)^3 >= relevant variables", 8 * s.pow(3) >= n, format!("(2 * {s})^3 >= {n}"));
    Ok(c)
}

/// A fixed pseudo-random centre so replays hit the same balls.
fn scrambled_center(f: &TruthTable) -> Input {
    let h = f.to_hex().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    h & all_vars(f.arity())
}

/// Majority reconstruction from radius-`2s` balls around several centres.
pub fn check_majority_reconstruction(f: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let r = sensitivity_report(f, limits)?;
    let (n, s) = (f.arity(), r.s());
    let radius = (2 * s).min(n);
    let mut centers = vec![0, all_vars(n), r.witness_s().unwrap_or(0), scrambled_center(f)];
    centers.sort_unstable();
    centers.dedup();
    for center in centers {
        let ball = BallValues::from_table(f, center, radius)?;
        let g = reconstruct_majority(&ball, s, limits)?;
        c.holds(
            format!("majority from ball at {}", format_bits(center, n)),
            &g == f,
            format!("radius {radius}, s = {s}"),
        );
    }
    Ok(c)
}

/// Monotone reconstruction from the radius-`s` ball at `0^n`.
pub fn check_monotone_reconstruction(f: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    c.holds("monotone", is_monotone(f, limits)?, "");
    let s = sensitivity_report(f, limits)?.s();
    let radius = s.min(f.arity());
    let ball = BallValues::from_table(f, 0, radius)?;
    let g = reconstruct_monotone(&ball, s, limits)?;
    c.holds("monotone reconstruction", &g == f, format!("radius {radius}"));
    Ok(c)
}

/// Inputs of `f` where `bs(f, x) != s(f, x)`, as `(x, s, bs)`.
///
/// Monotone functions can have such inputs: AND on two variables at `00` has
/// `s = 0` but the block `{1, 2}` is sensitive. The equality holds for the
/// maxima, not pointwise.
pub fn pointwise_gaps(f: &TruthTable, limits: &Limits) -> Result<Vec<(Input, usize, usize)>> {
    let mut out = Vec::new();
    for x in 0..f.len() {
        let s = sensitivity_at(f, x);
        let (bs, _) = block_sensitivity_at(f, x, limits)?;
        if s != bs {
            out.push((x, s, bs));
        }
    }
    Ok(out)
}

/// `bs(f) = s(f)` for a monotone function, on each side separately as well.
pub fn check_nisan(f: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    c.holds("monotone", is_monotone(f, limits)?, "");
    let r = block_sensitivity_report(f, limits)?;
    c.eq("bs = s", r.bs().unwrap_or(0), r.s());
    if let Some(b) = &r.block {
        c.eq("bs0 = s0", b.bs0, r.s0);
        c.eq("bs1 = s1", b.bs1, r.s1);
    }
    Ok(c)
}

/// `s(f xor g) <= s(f) + s(g)` and the same for `bs`.
pub fn check_xor(f: &TruthTable, g: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let h = xor_tt(f, g)?;
    let (rf, rg, rh) = (
        block_sensitivity_report(f, limits)?,
        block_sensitivity_report(g, limits)?,
        block_sensitivity_report(&h, limits)?,
    );
    let bs = |r: &MeasureReport| r.bs().unwrap_or(0);
    c.le("s(f xor g) <= s(f) + s(g)", rh.s(), rf.s() + rg.s());
    c.le("bs(f xor g) <= bs(f) + bs(g)", bs(&rh), bs(&rf) + bs(&rg));
    Ok(c)
}

fn max_agreement(f: &TruthTable, g: &TruthTable) -> Result<Option<(usize, Input)>> {
    let mut best = None;
    for center in 0..f.len() {
        if let AgreementRadius::Radius(r) = agreement_radius(f, g, center)? {
            if best.is_none_or(|(b, _)| r > b) {
                best = Some((r, center));
            }
        }
    }
    Ok(best)
}

/// Agreement on a ball of radius `s(f) + s(g)` around any centre forces `f = g`.
pub fn check_pair_uniqueness(f: &TruthTable, g: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let bound = sensitivity_report(f, limits)?.s() + sensitivity_report(g, limits)?.s();
    if f == g {
        return Ok(c);
    }
    if let Some((r, center)) = max_agreement(f, g)? {
        c.holds(
            "f != g: agreement radius < s(f) + s(g)",
            r < bound,
            format!("radius {r} at {} vs {bound}", format_bits(center, f.arity())),
        );
    }
    Ok(c)
}

/// Subcube components at distance >= 3 and the extracted formula's properties.
pub fn check_hypercube(g: &TruthTable, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let comps = one_set_components(g, limits)?;
    c.holds("s0 = 1 and non-constant", comps.hypothesis, format!("s0 = {}", comps.s0));
    c.holds(
        "components are subcubes at distance >= 3",
        comps.claim_holds == Some(true),
        format!("{} components, min distance {:?}", comps.components.len(), comps.min_distance),
    );
    if !c.passed() {
        return Ok(c);
    }
    let r = block_sensitivity_report(g, limits)?;
    let bs0 = r.bs0().unwrap_or(0);
    let at_origin = !g.get(0) && block_sensitivity_at(g, 0, limits)?.0 == bs0;
    let shifted = if at_origin { g.clone() } else { shift_to_bs0(g, limits)? };
    let d = hypercubes_to_dnf(&shifted, limits)?;
    let st = stats(&d);
    c.holds("block property", st.block, "");
    c.holds("transitive property", st.transitive, "");
    c.holds("3-mixing", st.mixing_max.at_least(3), format!("mixing {}", st.mixing_max));
    let rd = block_sensitivity_report(&d.to_truth_table(limits)?, limits)?;
    c.eq("bs0 unchanged", rd.bs0().unwrap_or(0), bs0);
    c.le("s1 not increased", rd.s1, r.s1);
    Ok(c)
}

/// Closed forms, structural properties and (where small enough) the expanded table.
fn check_family(kind: FamilyKind, n: usize, limits: &Limits) -> Result<Checks> {
    let mut c = Checks::new();
    let inst = FamilyInstance::build(kind, n, limits)?;
    let (s, bs) = kind.closed_form(n);
    let p = &inst.predicted;
    c.eq("s matches closed form", p.s(), s);
    c.eq("bs matches closed form", p.bs().unwrap_or(0), bs);
    let st = stats(&inst.g_dnf);
    c.holds("block property", st.block, "");
    match kind {
        FamilyKind::AmbainisSun => {
            c.holds("transitive property", st.transitive, "");
            c.holds("exactly 3-mixing", st.mixing_max == Mixing::Finite(3), format!("{}", st.mixing_max));
            c.eq("3 bs = 2 s^2 - s", 3 * bs + s, 2 * s * s);
        }
        FamilyKind::Rubinstein => {
            c.holds("4-mixing", st.mixing_max.at_least(4), format!("{}", st.mixing_max));
            c.eq("2 bs = s^2", 2 * bs, s * s);
        }
        FamilyKind::Virza => {
            c.holds("3-mixing", st.mixing_max == Mixing::Finite(3), format!("{}", st.mixing_max));
            c.eq("2 bs = s^2 + s", 2 * bs, s * s + s);
        }
        FamilyKind::OnesboundTight => {
            let g = &inst.g_report;
            let half = inst.g_dnf.width().div_ceil(2);
            c.eq("s0 = ceil(width / 2)", g.s0, half);
            c.eq("s1 = ceil(width / 2)", g.s1, half);
            c.eq("s1 = n + 1", g.s1, n + 1);
        }
    }
    if let Some(expanded) = &inst.expanded_dnf {
        if limits.check_bs("family", expanded.arity()).is_ok() {
            let full = block_sensitivity_report(&expanded.to_truth_table(limits)?, limits)?;
            c.eq("expanded table: s", full.s(), p.s());
            c.eq("expanded table: bs", full.bs().unwrap_or(0), p.bs().unwrap_or(0));
            c.eq("expanded table: bs0", full.bs0().unwrap_or(0), p.bs0().unwrap_or(0));
            c.eq("expanded table: s1", full.s1, p.s1);
        } else {
            let table = |x: Input| expanded.eval(x);
            let mut witnesses = vec![zero_witness_block(expanded)?, witness_onesbound(expanded)?];
            if kind == FamilyKind::AmbainisSun {
                witnesses.push(witness_2mixing_components(expanded)?);
            }
            for w in witnesses {
                let measured = expanded.sensitivity_at(w.input);
                c.holds(
                    format!("expanded {}: value", w.procedure),
                    table(w.input) == w.side.value(),
                    "",
                );
                c.eq(format!("expanded {}: measured", w.procedure), w.measured, measured);
                c.le(format!("expanded {}: bound", w.procedure), w.guaranteed_bound, measured);
                c.le(format!("expanded {}: at most s", w.procedure), measured, p.s());
            }
        }
    }
    Ok(c)
}

fn check_proposition(p: usize, q: usize) -> Result<Checks> {
    let mut c = Checks::new();
    let pair = proposition_pair(p, q)?;
    let limits = Limits::DEFAULT;
    c.eq("s(f) = p", sensitivity_report(&pair.f, &limits)?.s(), p);
    c.eq("s(g) = q", sensitivity_report(&pair.g, &limits)?.s(), q);
    c.holds("f != g", pair.f != pair.g, "");
    match agreement_radius(&pair.f, &pair.g, pair.center())? {
        AgreementRadius::Radius(r) => c.eq("agreement radius = p + q - 1", r, p + q - 1),
        AgreementRadius::DisagreeAtCenter => c.holds("agreement radius = p + q - 1", false, "disagree at centre"),
    }
    c.extend(check_pair_uniqueness(&pair.f, &pair.g, &limits)?);
    Ok(c)
}

const FAMILY_RANGE: [(FamilyKind, usize); 4] = [
    (FamilyKind::Rubinstein, 3),
    (FamilyKind::Virza, 3),
    (FamilyKind::AmbainisSun, 2),
    (FamilyKind::OnesboundTight, 3),
];

pub(crate) fn family_instances(limits: &Limits) -> Vec<(String, String, Result<Checks>)> {
    let mut out = Vec::new();
    for (kind, top) in FAMILY_RANGE {
        for n in 1..=top {
            let text = kind.inner(n).to_file_string();
            out.push((format!("{kind}({n})"), text, check_family(kind, n, limits)));
        }
    }
    for p in 2..=4 {
        for q in p..=4 {
            let text = proposition_pair(p, q)
                .map(|pair| format!("{}{}", pair.f.to_file_string(), pair.g.to_file_string()))
                .unwrap_or_default();
            out.push((format!("proposition pair ({p}, {q})"), text, check_proposition(p, q)));
        }
    }
    out
}

/// Replays a family instance given its inner formula.
pub fn check_families(text: &str, limits: &Limits) -> Result<Checks> {
    let d = Dnf::parse(text)?;
    for (kind, top) in FAMILY_RANGE {
        for n in 1..=top + 1 {
            if kind.inner(n) == d {
                return check_family(kind, n, limits);
            }
        }
    }
    Err(Error::OutOfRange("formula is not the inner function of a known family".into()))
}
