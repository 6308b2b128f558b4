use serde::Serialize;

use crate::bits::{positions, Input, VarSet};
use crate::dnf::{Dnf, Term};
use crate::error::Result;
use crate::limits::Limits;
use crate::measures::{block_sensitivity_at, block_sensitivity_report};

/// Outcome of the compact-form conditions with per-term evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactFormReport {
    /// `f(0^n) = 0`.
    pub cond_a: bool,
    /// `bs0(f)` is attained at `0^n` (ties allowed).
    pub cond_b: bool,
    /// Every term has an assignment satisfying it and no other term.
    pub cond_c: bool,
    /// Additionally `bs(f) = bs(f, 0^n)`.
    pub normalized: bool,
    /// Per term, a private satisfying assignment when one exists.
    pub private: Vec<Option<Input>>,
    pub bs0: usize,
    pub bs: usize,
    pub bs_at_zero: usize,
}

impl CompactFormReport {
    pub fn is_compact(&self) -> bool {
        self.cond_a && self.cond_b && self.cond_c
    }

    pub fn is_normalized_compact(&self) -> bool {
        self.is_compact() && self.normalized
    }

    /// Human-readable list of failed conditions.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.cond_a {
            out.push("f(0^n) = 1".to_string());
        }
        if !self.cond_b {
            out.push(format!(
                "bs0 = {} exceeds bs(f, 0^n) = {}",
                self.bs0, self.bs_at_zero
            ));
        }
        for (i, p) in self.private.iter().enumerate() {
            if p.is_none() {
                out.push(format!("term {} has no private assignment", i + 1));
            }
        }
        if !self.normalized {
            out.push(format!(
                "bs = {} exceeds bs(f, 0^n) = {}",
                self.bs, self.bs_at_zero
            ));
        }
        out
    }
}

/// An input satisfying term `index` and no other term, if one exists.
///
/// Term `index`'s literals are fixed; every other term is then either already
/// false, already true (no private point exists), or a residual term over the
/// free variables. Residual terms are split into variable-connected groups and
/// each group is searched exhaustively for an assignment falsifying all of them.
pub fn private_assignment(d: &Dnf, index: usize, limits: &Limits) -> Result<Option<Input>> {
    let term = d.terms[index];
    let fixed = term.support();
    let mut residual: Vec<Term> = Vec::new();
    for (j, t) in d.terms.iter().enumerate() {
        if j == index || t.pos & term.neg != 0 || t.neg & term.pos != 0 {
            continue;
        }
        let r = Term {
            pos: t.pos & !fixed,
            neg: t.neg & !fixed,
        };
        if r.support() == 0 {
            return Ok(None);
        }
        residual.push(r);
    }

    let mut assignment = term.pos;
    for group in variable_groups(&residual) {
        let vars: VarSet = group.iter().fold(0, |acc, t| acc | t.support());
        let width = vars.count_ones() as usize;
        limits.check_table("private assignment search", width)?;
        let mut sub: u64 = 0;
        let found = loop {
            if group.iter().all(|t| !t.eval(sub)) {
                break Some(sub);
            }
            sub = sub.wrapping_sub(vars) & vars;
            if sub == 0 {
                break None;
            }
        };
        match found {
            Some(s) => assignment |= s,
            None => return Ok(None),
        }
    }
    Ok(Some(assignment))
}

/// Partitions terms into groups connected by shared variables.
fn variable_groups(terms: &[Term]) -> Vec<Vec<Term>> {
    let mut parent: Vec<usize> = (0..terms.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner = [usize::MAX; 64];
    for (i, t) in terms.iter().enumerate() {
        for p in positions(t.support()) {
            if owner[p] == usize::MAX {
                owner[p] = i;
            } else {
                let (a, b) = (find(&mut parent, owner[p]), find(&mut parent, i));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<Term>> = Vec::new();
    let mut slot = vec![usize::MAX; terms.len()];
    for (i, t) in terms.iter().enumerate() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(*t);
    }
    groups
}

/// Checks the compact-form conditions and normalization.
pub fn check_compact_form(d: &Dnf, limits: &Limits) -> Result<CompactFormReport> {
    let f = d.to_truth_table(limits)?;
    let report = block_sensitivity_report(&f, limits)?;
    let (bs_at_zero, _) = block_sensitivity_at(&f, 0, limits)?;
    let private = (0..d.size())
        .map(|i| private_assignment(d, i, limits))
        .collect::<Result<Vec<_>>>()?;
    let bs0 = report.bs0().unwrap_or(0);
    let bs = report.bs().unwrap_or(0);
    let cond_a = !f.get(0);
    Ok(CompactFormReport {
        cond_a,
        cond_b: cond_a && bs0 <= bs_at_zero,
        cond_c: private.iter().all(Option::is_some),
        normalized: bs <= bs_at_zero,
        private,
        bs0,
        bs,
        bs_at_zero,
    })
}

impl Dnf {
    /// Drops terms without a private assignment, scanning from the last term.
    ///
    /// Removing a term never takes a private point away from another one, so
    /// a single pass leaves every remaining term irredundant.
    pub fn irredundant(&self, limits: &Limits) -> Result<Dnf> {
        let mut current = self.clone();
        for i in (0..self.size()).rev() {
            if private_assignment(&current, i, limits)?.is_none() {
                current.terms.remove(i);
            }
        }
        Ok(current)
    }

    /// Indices of terms lacking a private assignment.
    pub fn redundant_terms(&self, limits: &Limits) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            if private_assignment(self, i, limits)?.is_none() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// True when no term is empty on the positive side, i.e. `f(0^n) = 0`.
    pub fn zero_at_origin(&self) -> bool {
        !self.eval(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnf::fixtures::*;
    use proptest::prelude::*;

    const L: Limits = Limits::DEFAULT;

    fn brute_private(d: &Dnf, i: usize) -> bool {
        (0..1u64 << d.arity()).any(|x| {
            d.terms()[i].eval(x)
                && d.terms()
                    .iter()
                    .enumerate()
                    .all(|(j, t)| j == i || !t.eval(x))
        })
    }

    #[test]
    fn compact_form_examples() {
        let r = check_compact_form(&or3(), &L).unwrap();
        assert!(r.cond_a && r.cond_b && r.cond_c && r.normalized);

        let sub = dnf(2, &[(&[1], &[]), (&[1, 2], &[])]);
        let r = check_compact_form(&sub, &L).unwrap();
        assert!(!r.cond_c);
        assert_eq!(r.private[1], None);
        assert!(r.private[0].is_some());

        // compact, but bs = bs1 = 5 sits at a 1-input, so not normalized
        let r = check_compact_form(&ambainis_sun1(), &L).unwrap();
        assert!(r.is_compact(), "{:?}", r.failures());
        assert!(!r.normalized);
        assert_eq!((r.bs0, r.bs, r.bs_at_zero), (3, 5, 3));
        for (i, p) in r.private.iter().enumerate() {
            let x = p.unwrap();
            let d = ambainis_sun1();
            assert!(d.terms()[i].eval(x));
            assert_eq!(d.terms().iter().filter(|t| t.eval(x)).count(), 1);
        }
    }

    #[test]
    fn cond_a_failure() {
        let d = dnf(2, &[(&[], &[1])]);
        let r = check_compact_form(&d, &L).unwrap();
        assert!(!r.cond_a && !r.cond_b);
        assert!(!d.zero_at_origin());
    }

    #[test]
    fn irredundant_drops_subsumed_terms() {
        let d = dnf(3, &[(&[1], &[]), (&[1, 2], &[]), (&[2], &[3]), (&[2, 3], &[])]);
        let r = d.irredundant(&L).unwrap();
        assert_eq!(r.terms(), &dnf(3, &[(&[1], &[]), (&[2], &[3]), (&[2, 3], &[])]).terms()[..]);
        assert!(r.redundant_terms(&L).unwrap().is_empty());
        assert_eq!(r.to_truth_table(&L).unwrap(), d.to_truth_table(&L).unwrap());
    }

    #[test]
    fn search_splits_into_groups_beyond_table_limits() {
        // 10 disjoint copies of a 4-variable pattern: 40 variables, tiny groups
        let mut terms = Vec::new();
        for c in 0..10 {
            let o = 4 * c;
            terms.push(Term::from_vars(&[o + 1, o + 2], &[o + 3, o + 4]).unwrap());
            terms.push(Term::from_vars(&[o + 3, o + 4], &[o + 1, o + 2]).unwrap());
        }
        let d = Dnf::new(40, terms).unwrap();
        for i in 0..d.size() {
            let x = private_assignment(&d, i, &L).unwrap().unwrap();
            assert_eq!(d.terms().iter().filter(|t| t.eval(x)).count(), 1);
        }
    }

    proptest! {
        #[test]
        fn private_search_matches_brute_force(
            n in 1usize..=10,
            raw in proptest::collection::vec((any::<u64>(), any::<u64>(), any::<u64>()), 1..7),
        ) {
            let mask = crate::bits::all_vars(n);
            let terms: Vec<Term> = raw.iter().map(|&(p, q, keep)| {
                let keep = keep & mask | 1;
                let p = p & keep & mask;
                let q = q & keep & mask & !p;
                Term::new(p, q).unwrap()
            }).collect();
            let d = Dnf::new(n, terms).unwrap();
            for i in 0..d.size() {
                let found = private_assignment(&d, i, &L).unwrap();
                prop_assert_eq!(found.is_some(), brute_private(&d, i));
                if let Some(x) = found {
                    prop_assert!(d.terms()[i].eval(x));
                    prop_assert!(d.terms().iter().enumerate().all(|(j, t)| j == i || !t.eval(x)));
                }
            }
        }
    }
}
