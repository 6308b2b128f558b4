use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::VarSet;
use crate::dnf::{check_compact_form, CompactFormReport, Dnf};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::sensitivity_report;
use crate::table::TruthTable;

/// Largest `l` for which the l-mixing property holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mixing {
    Finite(usize),
    /// No two terms share a variable.
    Unbounded,
}

impl Mixing {
    pub fn at_least(self, l: usize) -> bool {
        match self {
            Mixing::Finite(m) => m >= l,
            Mixing::Unbounded => true,
        }
    }
}

impl fmt::Display for Mixing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mixing::Finite(m) => write!(f, "{m}"),
            Mixing::Unbounded => f.write_str("inf"),
        }
    }
}

impl Serialize for Mixing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mixing::Finite(m) => s.serialize_u64(*m as u64),
            Mixing::Unbounded => s.serialize_str("inf"),
        }
    }
}

/// Syntactic structure of a DNF.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnfStats {
    pub size: usize,
    pub width: usize,
    /// Number of terms contradicting term i on exactly one variable.
    pub gamma_per_term: Vec<usize>,
    pub gamma: usize,
    /// Most terms any single variable appears positively in (at least 1).
    pub t_min: usize,
    pub mixing_max: Mixing,
    pub transitive: bool,
    pub block: bool,
}

pub fn stats(d: &Dnf) -> DnfStats {
    let terms = d.terms();
    let gamma_per_term: Vec<usize> = terms
        .iter()
        .map(|a| terms.iter().filter(|b| a.conflicts(b) == 1).count())
        .collect();
    let t_min = (0..d.arity())
        .map(|p| terms.iter().filter(|t| t.pos() >> p & 1 == 1).count())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut mixing_max = Mixing::Unbounded;
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if a.shares_variable(b) {
                mixing_max = mixing_max.min(Mixing::Finite(a.conflicts(b)));
            }
        }
    }
    DnfStats {
        size: terms.len(),
        width: d.width(),
        gamma: gamma_per_term.iter().copied().max().unwrap_or(0),
        gamma_per_term,
        t_min,
        mixing_max,
        transitive: is_transitive(d),
        block: t_min == 1,
    }
}

fn is_transitive(d: &Dnf) -> bool {
    term_components(d).iter().all(|c| {
        c.terms.iter().enumerate().all(|(k, &i)| {
            c.terms[k + 1..]
                .iter()
                .all(|&j| d.terms()[i].shares_variable(&d.terms()[j]))
        })
    })
}

/// A class of terms connected by shared variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermComponent {
    /// Term indices, ascending.
    pub terms: Vec<usize>,
    pub vars: VarSet,
    /// Fewest conflicts between two of its terms; 3 for a single term.
    pub mixing: usize,
}

/// Connected components of the "shares a variable" relation, ordered by first term.
pub fn term_components(d: &Dnf) -> Vec<TermComponent> {
    let terms = d.terms();
    let mut comp: Vec<Option<usize>> = vec![None; terms.len()];
    let mut out: Vec<TermComponent> = Vec::new();
    for start in 0..terms.len() {
        if comp[start].is_some() {
            continue;
        }
        let id = out.len();
        comp[start] = Some(id);
        let mut members = vec![start];
        let mut vars = terms[start].support();
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..terms.len() {
                if comp[j].is_none() && terms[i].shares_variable(&terms[j]) {
                    comp[j] = Some(id);
                    vars |= terms[j].support();
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        let mixing = if members.len() == 1 {
            3
        } else {
            let mut m = usize::MAX;
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    m = m.min(terms[i].conflicts(&terms[j]));
                }
            }
            m
        };
        out.push(TermComponent {
            terms: members,
            vars,
            mixing,
        });
    }
    out
}

/// Measured `s1` against `width - gamma <= s1 <= width`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub compact: CompactFormReport,
    pub width: usize,
    pub gamma: usize,
    pub mixing_max: Mixing,
    /// `None` when the formula is not in compact form or has no 1-input.
    pub s1: Option<usize>,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// With mixing at least 2: whether `s1 = width`.
    pub equality_ok: Option<bool>,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.compact.is_compact()
            && self.s1.is_some()
            && self.lower_ok
            && self.upper_ok
            && self.equality_ok != Some(false)
    }
}

pub fn bounds_report(d: &Dnf, f: &TruthTable, limits: &Limits) -> Result<BoundsReport> {
    let table = d.to_truth_table(limits)?;
    if table.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            left: d.arity(),
            right: f.arity(),
        });
    }
    if &table != f {
        return Err(Error::Inconsistent(
            "truth table does not match the DNF".into(),
        ));
    }
    let st = stats(d);
    let compact = check_compact_form(d, limits)?;
    let mut report = BoundsReport {
        compact,
        width: st.width,
        gamma: st.gamma,
        mixing_max: st.mixing_max,
        s1: None,
        lower_ok: false,
        upper_ok: false,
        equality_ok: None,
    };
    if !report.compact.is_compact() {
        return Ok(report);
    }
    let m = sensitivity_report(f, limits)?;
    if !m.has_one {
        return Ok(report);
    }
    let s1 = m.s1;
    report.s1 = Some(s1);
    report.lower_ok = st.width.saturating_sub(st.gamma) <= s1;
    report.upper_ok = s1 <= st.width;
    if st.mixing_max.at_least(2) {
        report.equality_ok = Some(st.gamma == 0 && s1 == st.width);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::fixtures::*;
    use proptest::prelude::*;

    const L: Limits = Limits::DEFAULT;

    #[test]
    fn or3_stats() {
        let s = stats(&or3());
        assert_eq!((s.size, s.width, s.gamma, s.t_min), (3, 1, 0, 1));
        assert!(s.block && s.transitive);
        assert_eq!(s.mixing_max, Mixing::Unbounded);
    }

    #[test]
    fn rubinstein_and_ambainis_sun_stats() {
        let r = stats(&rubinstein2());
        assert!(r.block && r.transitive);
        assert_eq!(r.mixing_max, Mixing::Finite(4));
        let a = stats(&ambainis_sun1());
        assert!(a.block && a.transitive);
        assert_eq!(a.mixing_max, Mixing::Finite(3));
        assert_eq!(a.gamma, 0);
    }

    #[test]
    fn t_block_and_transitivity() {
        let d = dnf(3, &[(&[1, 2], &[]), (&[2, 3], &[])]);
        let s = stats(&d);
        assert_eq!(s.t_min, 2);
        assert!(!s.block);
        assert_eq!(s.mixing_max, Mixing::Finite(0));
        // 1 ~ 2 ~ 3 but 1 and 3 share nothing
        let chain = dnf(5, &[(&[1], &[2]), (&[2], &[3]), (&[3], &[4])]);
        assert!(!stats(&chain).transitive);
        assert_eq!(term_components(&chain).len(), 1);
    }

    #[test]
    fn gamma_counts_single_conflicts() {
        let d = dnf(3, &[(&[1], &[]), (&[2], &[1]), (&[3], &[1])]);
        let s = stats(&d);
        assert_eq!(s.gamma_per_term, vec![2, 1, 1]);
        assert_eq!(s.gamma, 2);
        assert_eq!(s.mixing_max, Mixing::Finite(0));
    }

    #[test]
    fn components_with_mixing() {
        let mut terms = ambainis_sun1().terms().to_vec();
        terms.push(crate::dnf::Term::from_vars(&[7], &[]).unwrap());
        let d = Dnf::new(7, terms).unwrap();
        let c = term_components(&d);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].terms, vec![0, 1, 2]);
        assert_eq!(c[0].mixing, 3);
        assert_eq!(c[1].mixing, 3);
    }

    #[test]
    fn bounds_examples() {
        for (d, s1) in [
            (ambainis_sun1(), 5),
            (or3(), 1),
            (dnf(2, &[(&[1, 2], &[])]), 2),
        ] {
            let f = d.to_truth_table(&L).unwrap();
            let r = bounds_report(&d, &f, &L).unwrap();
            assert_eq!(r.s1, Some(s1));
            assert!(r.holds());
        }
    }

    #[test]
    fn bounds_skip_non_compact() {
        let d = dnf(2, &[(&[1], &[]), (&[1, 2], &[])]);
        let f = d.to_truth_table(&L).unwrap();
        let r = bounds_report(&d, &f, &L).unwrap();
        assert!(!r.compact.cond_c);
        assert_eq!(r.s1, None);
        assert!(!r.holds());
    }

    fn arb_dnf() -> impl Strategy<Value = Dnf> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec((0u64..1 << n, 0u64..1 << n), 1..=5).prop_map(move |v| {
                let terms = v
                    .into_iter()
                    .map(|(p, q)| crate::dnf::Term::new(p, q & !p).unwrap())
                    .collect();
                Dnf::new(n, terms).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn mixing_two_forces_zero_gamma(d in arb_dnf()) {
            let s = stats(&d);
            if s.mixing_max.at_least(2) {
                prop_assert_eq!(s.gamma, 0);
            }
            prop_assert_eq!(s.block, s.t_min == 1);
        }

        #[test]
        fn compact_forms_respect_gamma_bounds(d in arb_dnf()) {
            let f = d.to_truth_table(&L).unwrap();
            let r = bounds_report(&d, &f, &L).unwrap();
            if r.compact.is_compact() {
                prop_assert!(r.holds(), "{:?}\n{}", r, d);
            }
        }
    }
}
