//! The separating families and variable-disjoint OR composition.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::{all_vars, Input, VarSet};
use crate::dnf::{Dnf, Term};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::{block_sensitivity_report, BlockMeasures, MeasureReport};
use crate::table::TruthTable;

/// Measures of `f = g(x_1) ∨ ... ∨ g(x_m)` on disjoint copies, from those of `g`.
///
/// With `g` having a 0-input: `s1` and `bs1` are unchanged, `s0` and `bs0`
/// scale by `m`. Witnesses are kept only for `m = 1`.
pub fn disjoint_or_compose(g: &MeasureReport, m: usize) -> Result<MeasureReport> {
    if m == 0 {
        return Err(Error::OutOfRange("composition needs at least one copy".into()));
    }
    if !g.has_zero {
        return Err(Error::CompositionRefused(
            "g is constant 1, so every composed input is a 1-input".into(),
        ));
    }
    if m == 1 {
        return Ok(g.clone());
    }
    Ok(MeasureReport {
        arity: g.arity * m,
        has_zero: true,
        has_one: g.has_one,
        s0: g.s0 * m,
        s1: g.s1,
        witness_s0: None,
        witness_s1: None,
        block: g.block.as_ref().map(|b| BlockMeasures {
            bs0: b.bs0 * m,
            bs1: b.bs1,
            witness_bs0: None,
            witness_bs1: None,
        }),
    })
}

/// DNF of `m` variable-disjoint copies of `g`; copy `i` uses variables
/// `(i-1)·arity + 1 ..= i·arity`.
pub fn explicit_or_expand(g: &Dnf, m: usize, limits: &Limits) -> Result<Dnf> {
    if m == 0 {
        return Err(Error::OutOfRange("expansion needs at least one copy".into()));
    }
    let arity = g.arity() * m;
    if arity > limits.expand_max.min(crate::bits::MAX_VARS) {
        return Err(Error::Capacity {
            what: "explicit_or_expand",
            arity,
            limit: limits.expand_max.min(crate::bits::MAX_VARS),
        });
    }
    let terms = (0..m)
        .flat_map(|i| g.terms().iter().map(move |t| t.shifted(i * g.arity())))
        .collect();
    Dnf::new(arity, terms)
}

fn term(pos: VarSet, neg: VarSet) -> Term {
    Term::new(pos, neg).expect("generated literals are disjoint")
}

fn pair(j: usize) -> VarSet {
    0b11 << (2 * j)
}

/// Rubinstein's inner function on `2n` variables: exactly one aligned pair set.
pub fn rubinstein_dnf(n: usize) -> Dnf {
    let all = all_vars(2 * n);
    let terms = (0..n).map(|j| term(pair(j), all & !pair(j))).collect();
    Dnf::new(2 * n, terms).expect("arity fits")
}

/// Rubinstein's pattern plus one extra single-variable pattern, on `2n + 1` variables.
pub fn virza_dnf(n: usize) -> Dnf {
    let all = all_vars(2 * n + 1);
    let last = 1u64 << (2 * n);
    let mut terms: Vec<Term> = (0..n).map(|j| term(pair(j), all & !pair(j))).collect();
    terms.push(term(last, all & !last));
    Dnf::new(2 * n + 1, terms).expect("arity fits")
}

/// Ambainis–Sun inner function on `4n + 2` variables.
///
/// The pattern is `0^{2n} 11 (0_)^n`; term `r` is the pattern rotated so that
/// position `p` moves to `p + 2r` (cyclically), for `r = 0..=2n`.
pub fn ambainis_sun_dnf(n: usize) -> Dnf {
    let len = 4 * n + 2;
    let mut ones: VarSet = 0b11 << (2 * n);
    let mut zeros: VarSet = all_vars(2 * n);
    for k in 0..n {
        zeros |= 1 << (2 * n + 2 + 2 * k);
    }
    let rotate = |set: VarSet| ((set << 2) | (set >> (len - 2))) & all_vars(len);
    let mut terms = Vec::new();
    for _ in 0..=2 * n {
        terms.push(term(ones, zeros));
        ones = rotate(ones);
        zeros = rotate(zeros);
    }
    Dnf::new(len, terms).expect("arity fits")
}

/// The formula on `2n + 1` variables where `s0 = s1 = ceil(width / 2) = n + 1`.
pub fn onesbound_tight(n: usize) -> Dnf {
    let evens: VarSet = (0..n).fold(0, |acc, i| acc | 1 << (2 * i + 1));
    let odds: VarSet = (0..=n).fold(0, |acc, i| acc | 1 << (2 * i));
    let mut terms: Vec<Term> = (0..n).map(|i| term(1 << (2 * i + 1), 0)).collect();
    terms.push(term(odds, evens));
    Dnf::new(2 * n + 1, terms).expect("arity fits")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Rubinstein,
    Virza,
    AmbainisSun,
    OnesboundTight,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Rubinstein,
        FamilyKind::Virza,
        FamilyKind::AmbainisSun,
        FamilyKind::OnesboundTight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Rubinstein => "rubinstein",
            FamilyKind::Virza => "virza",
            FamilyKind::AmbainisSun => "ambainis-sun",
            FamilyKind::OnesboundTight => "onesbound",
        }
    }

    pub fn inner(self, n: usize) -> Dnf {
        match self {
            FamilyKind::Rubinstein => rubinstein_dnf(n),
            FamilyKind::Virza => virza_dnf(n),
            FamilyKind::AmbainisSun => ambainis_sun_dnf(n),
            FamilyKind::OnesboundTight => onesbound_tight(n),
        }
    }

    /// Number of copies in the composed function.
    pub fn copies(self, n: usize) -> usize {
        match self {
            FamilyKind::Rubinstein => 2 * n,
            FamilyKind::Virza => 2 * n + 1,
            FamilyKind::AmbainisSun => 3 * n + 2,
            FamilyKind::OnesboundTight => 1,
        }
    }

    /// Closed-form `(s, bs)` of the composed function.
    pub fn closed_form(self, n: usize) -> (usize, usize) {
        match self {
            FamilyKind::Rubinstein => {
                let s = 2 * n;
                (s, s * s / 2)
            }
            FamilyKind::Virza => {
                let s = 2 * n + 1;
                (s, (s * s + s) / 2)
            }
            FamilyKind::AmbainisSun => {
                let s = 3 * n + 2;
                (s, (2 * s * s - s) / 3)
            }
            FamilyKind::OnesboundTight => (n + 1, n + 1),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rubinstein" => Ok(FamilyKind::Rubinstein),
            "virza" => Ok(FamilyKind::Virza),
            "ambainis-sun" | "as" => Ok(FamilyKind::AmbainisSun),
            "onesbound" | "onesbound-tight" => Ok(FamilyKind::OnesboundTight),
            other => Err(Error::OutOfRange(format!("unknown family `{other}`"))),
        }
    }
}

/// An inner function, its exact measures and the predicted measures of its composition.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInstance {
    pub name: String,
    pub kind: FamilyKind,
    pub n: usize,
    pub g_dnf: Dnf,
    pub copies: usize,
    pub g_report: MeasureReport,
    pub predicted: MeasureReport,
    pub expanded_dnf: Option<Dnf>,
}

impl FamilyInstance {
    pub fn build(kind: FamilyKind, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("family parameter n must be >= 1".into()));
        }
        let g_dnf = kind.inner(n);
        let g_report = block_sensitivity_report(&g_dnf.to_truth_table(limits)?, limits)?;
        let copies = kind.copies(n);
        let predicted = disjoint_or_compose(&g_report, copies)?;
        let expanded_dnf = if copies * g_dnf.arity() <= limits.expand_max {
            Some(explicit_or_expand(&g_dnf, copies, limits)?)
        } else {
            None
        };
        Ok(FamilyInstance {
            name: format!("{kind}({n})"),
            kind,
            n,
            g_dnf,
            copies,
            g_report,
            predicted,
            expanded_dnf,
        })
    }
}

pub fn rubinstein(n: usize, limits: &Limits) -> Result<FamilyInstance> {
    FamilyInstance::build(FamilyKind::Rubinstein, n, limits)
}

pub fn virza(n: usize, limits: &Limits) -> Result<FamilyInstance> {
    FamilyInstance::build(FamilyKind::Virza, n, limits)
}

pub fn ambainis_sun(n: usize, limits: &Limits) -> Result<FamilyInstance> {
    FamilyInstance::build(FamilyKind::AmbainisSun, n, limits)
}

/// Two functions with sensitivities `p` and `q` that differ only at `a`.
#[derive(Clone, Debug)]
pub struct PropositionPair {
    pub p: usize,
    pub q: usize,
    pub f: TruthTable,
    pub g: TruthTable,
    pub a: Input,
}

impl PropositionPair {
    /// Centre of the largest agreement ball: the antipode of `a`.
    pub fn center(&self) -> Input {
        self.a ^ all_vars(self.p + self.q)
    }
}

/// `f` thresholds the weight of the first `2p` coordinates, breaking weight
/// `p` by the parity of the sum of set indices; `g` equals `f` except at `a`.
pub fn proposition_pair(p: usize, q: usize) -> Result<PropositionPair> {
    if p < 2 || p > q {
        return Err(Error::OutOfRange(format!(
            "proposition pair needs 2 <= p <= q, got p = {p}, q = {q}"
        )));
    }
    let n = p + q;
    if n > TruthTable::MAX_ARITY {
        return Err(Error::Capacity {
            what: "proposition_pair",
            arity: n,
            limit: TruthTable::MAX_ARITY,
        });
    }
    let head = all_vars(2 * p);
    let f = TruthTable::from_fn(n, |x| {
        let w = (x & head).count_ones() as usize;
        match w.cmp(&p) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => {
                crate::bits::positions(x & head).map(|b| b + 1).sum::<usize>() % 2 == 1
            }
        }
    });
    let a = (1..=n)
        .filter(|&i| i == 1 || i > 2 * p || (i % 2 == 0 && i != 2 * p))
        .fold(0u64, |acc, i| acc | 1 << (i - 1));
    let mut g = f.clone();
    g.set(a, false);
    Ok(PropositionPair { p, q, f, g, a })
}
