//! Seeded random instances for the suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::{all_vars, positions, Input, VarSet};
use crate::dnf::{check_compact_form, normalize, stats, Dnf, Term};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::block_sensitivity_report;
use crate::table::TruthTable;

const ATTEMPTS: usize = 10_000;

fn random_subset<R: Rng>(rng: &mut R, from: VarSet, p: f64) -> VarSet {
    positions(from).fold(0, |acc, v| if rng.gen_bool(p) { acc | 1 << v } else { acc })
}

fn pick<R: Rng>(rng: &mut R, from: VarSet, k: std::ops::RangeInclusive<usize>) -> VarSet {
    let k = rng.gen_range(k);
    let mut pool: Vec<usize> = positions(from).collect();
    pool.shuffle(rng);
    pool.iter().take(k).fold(0, |acc, &v| acc | 1 << v)
}

fn term(pos: VarSet, neg: VarSet) -> Term {
    Term::new(pos, neg & !pos).expect("negatives exclude positives")
}

/// Terms with at most `max_pos` positive variables, none used more than `t` times.
fn occurrence_terms<R: Rng>(rng: &mut R, n: usize, t: usize, max_pos: usize, max_terms: usize, p_neg: f64) -> Vec<Term> {
    let k = rng.gen_range(2..=(t * n).min(max_terms));
    let mut uses = vec![0usize; n];
    let mut terms = Vec::new();
    for _ in 0..k {
        let free = (0..n).filter(|&v| uses[v] < t).fold(0u64, |a, v| a | 1 << v);
        if free == 0 {
            break;
        }
        let pos = pick(rng, free, 1..=max_pos);
        for v in positions(pos) {
            uses[v] += 1;
        }
        let neg = if max_pos <= 2 {
            if rng.gen_bool(p_neg) {
                pick(rng, all_vars(n) & !pos, 1..=1)
            } else {
                0
            }
        } else {
            random_subset(rng, all_vars(n) & !pos, p_neg)
        };
        terms.push(term(pos, neg));
    }
    terms
}

/// Positive pairs forming a graph of maximum degree `t`, with sparse negatives.
fn graph_terms<R: Rng>(rng: &mut R, n: usize, t: usize) -> Vec<Term> {
    let mut degree = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    edges.shuffle(rng);
    let p_neg = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.15) };
    let mut terms = Vec::new();
    for (a, b) in edges {
        if degree[a] < t && degree[b] < t {
            degree[a] += 1;
            degree[b] += 1;
            let pos = 1 << a | 1 << b;
            terms.push(term(pos, random_subset(rng, all_vars(n) & !pos, p_neg)));
        }
    }
    terms
}

/// Positive sets are consecutive slices of a shuffled variable order, so they
/// are disjoint and non-empty; redundant terms are then dropped.
///
/// The result is in compact form: dropping terms keeps every positive set
/// non-empty and pairwise disjoint, which already forces `bs(f, 0^n)` to be the
/// term count and hence maximal among 0-inputs.
pub fn block_dnf<R: Rng>(rng: &mut R, max_arity: usize, limits: &Limits) -> Result<Dnf> {
    let n = rng.gen_range(3..=max_arity.max(3));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let k = rng.gen_range(1..=n.min(8));
    let used = rng.gen_range(k..=n);
    let mut cuts: Vec<usize> = (1..used).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.push(0);
    cuts.push(used);
    cuts.sort_unstable();
    let p_neg = rng.gen_range(0.0..0.9);
    let terms = cuts
        .windows(2)
        .map(|w| {
            let pos = order[w[0]..w[1]].iter().fold(0u64, |acc, &v| acc | 1 << v);
            term(pos, random_subset(rng, all_vars(n) & !pos, p_neg))
        })
        .collect();
    Dnf::new(n, terms)?.irredundant(limits)
}

/// A formula where every variable is positive in at most `t` terms and some
/// variable in exactly `t`, in compact form (by rejection).
pub fn tblock_dnf<R: Rng>(rng: &mut R, t: usize, max_arity: usize, limits: &Limits) -> Result<Dnf> {
    // the shape is fixed before rejection so each keeps its share
    let shape = rng.gen_range(0..3);
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(4..=max_arity.max(4));
        let terms = match shape {
            0 => graph_terms(rng, n, t),
            1 => occurrence_terms(rng, n, t, 2, 24, 0.3),
            _ => {
                let p_neg = rng.gen_range(0.0..0.5);
                occurrence_terms(rng, n, t, 4, 8, p_neg)
            }
        };
        let d = Dnf::new(n, terms)?.irredundant(limits)?;
        if stats(&d).t_min != t {
            continue;
        }
        if check_compact_form(&d, limits)?.is_compact() {
            return Ok(d);
        }
    }
    Err(Error::Internal(format!("no compact {t}-block formula sampled")))
}

/// A random function of a few variables, padded to `n`.
pub fn random_table<R: Rng>(rng: &mut R, n: usize) -> TruthTable {
    let density = [0.1, 0.3, 0.5, 0.7, 0.9][rng.gen_range(0..5)];
    TruthTable::from_fn(n, |_| rng.gen_bool(density))
}

/// A compact-form formula from one of three sources: normalization of a random
/// function, a rejection-sampled general formula, or a block-property formula.
pub fn compact_dnf<R: Rng>(rng: &mut R, max_arity: usize, limits: &Limits) -> Result<Dnf> {
    match rng.gen_range(0..3) {
        0 => loop {
            let n = rng.gen_range(2..=max_arity.clamp(2, 8));
            let f = random_table(rng, n);
            if f.constant_value().is_none() {
                return Ok(normalize(&f, limits)?.dnf);
            }
        },
        1 => {
            for _ in 0..ATTEMPTS {
                let n = rng.gen_range(3..=max_arity.max(3));
                let k = rng.gen_range(1..=6);
                let terms = (0..k)
                    .map(|_| {
                        let pos = pick(rng, all_vars(n), 1..=3);
                        let p = rng.gen_range(0.0..0.6);
                        let neg = random_subset(rng, all_vars(n) & !pos, p);
                        term(pos, neg)
                    })
                    .collect();
                let d = Dnf::new(n, terms)?.irredundant(limits)?;
                if check_compact_form(&d, limits)?.is_compact() {
                    return Ok(d);
                }
            }
            Err(Error::Internal("no compact formula sampled".into()))
        }
        _ => block_dnf(rng, max_arity, limits),
    }
}

/// Block + transitive + 2-mixing, normalized compact form, depending on at
/// least two variables; components are cliques on disjoint variable ranges.
pub fn mixing_dnf<R: Rng>(rng: &mut R, max_arity: usize, limits: &Limits) -> Result<Dnf> {
    for _ in 0..ATTEMPTS {
        let components = rng.gen_range(1..=3);
        let mut terms = Vec::new();
        let mut offset = 0;
        for _ in 0..components {
            let width = rng.gen_range(3..=6);
            if offset + width > max_arity {
                break;
            }
            let block = all_vars(width) << offset;
            let k = rng.gen_range(1..=3.min(width));
            let mut order: Vec<usize> = positions(block).collect();
            order.shuffle(rng);
            let mut cuts: Vec<usize> = (1..width).collect();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
            cuts.push(0);
            cuts.push(rng.gen_range(k..=width));
            cuts.sort_unstable();
            cuts.dedup();
            let pos: Vec<VarSet> = cuts
                .windows(2)
                .map(|w| order[w[0]..w[1]].iter().fold(0u64, |a, &v| a | 1 << v))
                .filter(|&p| p != 0)
                .collect();
            for (i, &p) in pos.iter().enumerate() {
                let others = pos
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(0, |a, (_, &q)| a | q);
                let neg = random_subset(rng, others, 0.7) | random_subset(rng, block & !others & !p, 0.3);
                terms.push(term(p, neg));
            }
            offset += width;
        }
        if terms.is_empty() {
            continue;
        }
        let d = Dnf::new(offset, terms)?.irredundant(limits)?;
        let st = stats(&d);
        if !(st.block && st.transitive && st.mixing_max.at_least(2)) {
            continue;
        }
        let f = d.to_truth_table(limits)?;
        if f.relevant_variables().len() < 2 {
            continue;
        }
        if check_compact_form(&d, limits)?.is_normalized_compact() {
            return Ok(d);
        }
    }
    Err(Error::Internal("no normalized 2-mixing formula sampled".into()))
}

/// Upward closure of a few random small sets.
pub fn monotone_table<R: Rng>(rng: &mut R, max_arity: usize) -> TruthTable {
    let n = rng.gen_range(2..=max_arity.max(2));
    monotone_table_on(rng, n)
}

fn monotone_table_on<R: Rng>(rng: &mut R, n: usize) -> TruthTable {
    let k = rng.gen_range(1..=5);
    let minterms: Vec<VarSet> = (0..k)
        .map(|_| pick(rng, all_vars(n), 1..=3.min(n)))
        .collect();
    TruthTable::from_fn(n, |x| minterms.iter().any(|&m| x & m == m))
}

/// Functions of low sensitivity relative to their arity: juntas, small DNFs,
/// and occasionally a fully random table.
pub fn low_sensitivity_table<R: Rng>(rng: &mut R, max_arity: usize) -> TruthTable {
    let n = rng.gen_range(2..=max_arity.max(2));
    match rng.gen_range(0..4) {
        0 => {
            let vars = pick(rng, all_vars(n), 1..=3.min(n));
            let inner = random_table(rng, vars.count_ones() as usize);
            TruthTable::from_fn(n, |x| {
                let idx = positions(vars)
                    .enumerate()
                    .fold(0, |acc, (k, v)| acc | ((x >> v) & 1) << k);
                inner.get(idx)
            })
        }
        1 => {
            let k = rng.gen_range(1..=3);
            let cubes: Vec<(VarSet, Input)> = (0..k)
                .map(|_| {
                    let care = pick(rng, all_vars(n), 1..=n.min(4));
                    (care, rng.gen::<u64>() & care)
                })
                .collect();
            TruthTable::from_fn(n, |x| cubes.iter().any(|&(c, v)| x & c == v))
        }
        2 => monotone_table_on(rng, n),
        _ => random_table(rng, n),
    }
}

/// A union of subcubes at pairwise distance at least 3, so `s0 = 1`.
pub fn s0_one_table<R: Rng>(rng: &mut R, max_arity: usize) -> TruthTable {
    loop {
        let n = rng.gen_range(4..=max_arity.max(4));
        let k = rng.gen_range(1..=4);
        let mut cubes: Vec<(VarSet, Input)> = Vec::new();
        for _ in 0..k * 20 {
            if cubes.len() == k {
                break;
            }
            let care = pick(rng, all_vars(n), 3..=n);
            let value = rng.gen::<u64>() & care;
            let far = cubes
                .iter()
                .all(|&(c, v)| ((v ^ value) & c & care).count_ones() >= 3);
            if far {
                cubes.push((care, value));
            }
        }
        if !cubes.is_empty() {
            return TruthTable::from_fn(n, |x| cubes.iter().any(|&(c, v)| x & c == v));
        }
    }
}

/// Shifts `g` so that `0^n` is a 0-input attaining `bs0(g)`.
pub fn shift_to_bs0(g: &TruthTable, limits: &Limits) -> Result<TruthTable> {
    let r = block_sensitivity_report(g, limits)?;
    match r.block.and_then(|b| b.witness_bs0) {
        Some(w) => Ok(g.shifted(w.input)),
        None => Err(Error::Degenerate("function has no 0-input".into())),
    }
}
