use std::fmt;

use serde::Serialize;

use crate::bits::{all_vars, format_set, positions, Input, VarSet};
use crate::dnf::{Dnf, Term};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::{block_sensitivity_at, block_sensitivity_report, sensitivity_report};
use crate::table::TruthTable;

/// A connected component of the 1-set, with the coordinates constant on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubcubeComponent {
    pub fixed_mask: VarSet,
    /// Values of the fixed coordinates (bits outside `fixed_mask` are 0).
    pub fixed_values: Input,
    pub free: VarSet,
    #[serde(skip)]
    pub members: Vec<Input>,
    pub size: usize,
    /// Members are exactly all completions of the fixed coordinates.
    pub is_subcube: bool,
}

impl SubcubeComponent {
    fn from_members(arity: usize, mut members: Vec<Input>) -> Self {
        members.sort_unstable();
        let first = members[0];
        let varying = members.iter().fold(0, |acc, &x| acc | (x ^ first));
        let fixed_mask = all_vars(arity) & !varying;
        let size = members.len();
        SubcubeComponent {
            fixed_mask,
            fixed_values: first & fixed_mask,
            free: varying,
            is_subcube: size as u128 == 1u128 << varying.count_ones(),
            members,
            size,
        }
    }

    pub fn dimension(&self) -> usize {
        self.free.count_ones() as usize
    }

    pub fn contains(&self, x: Input) -> bool {
        if self.is_subcube {
            x & self.fixed_mask == self.fixed_values
        } else {
            self.members.binary_search(&x).is_ok()
        }
    }

    /// The term whose satisfying set is this subcube.
    pub fn term(&self) -> Term {
        Term::new(self.fixed_values, self.fixed_mask & !self.fixed_values)
            .expect("fixed literals are consistent")
    }

    fn distance(&self, other: &SubcubeComponent) -> usize {
        if self.is_subcube && other.is_subcube {
            let both = self.fixed_mask & other.fixed_mask;
            return ((self.fixed_values ^ other.fixed_values) & both).count_ones() as usize;
        }
        self.members
            .iter()
            .flat_map(|a| other.members.iter().map(move |b| (a ^ b).count_ones() as usize))
            .min()
            .unwrap_or(0)
    }
}

impl fmt::Display for SubcubeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ones {} zeros {} free {}",
            format_set(self.fixed_values),
            format_set(self.fixed_mask & !self.fixed_values),
            format_set(self.free)
        )?;
        if !self.is_subcube {
            write!(f, " (not a subcube, {} points)", self.size)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<SubcubeComponent>,
    /// `(i, j, distance)` for every pair `i < j`.
    pub distances: Vec<(usize, usize, usize)>,
    pub min_distance: Option<usize>,
    pub s0: usize,
    /// `s0 = 1` and the function is not constant.
    pub hypothesis: bool,
    /// Under the hypothesis: all components are subcubes at pairwise distance >= 3.
    pub claim_holds: Option<bool>,
}

/// Connected components of the subgraph of the cube induced by `f^{-1}(1)`,
/// ordered by smallest member.
pub fn one_set_components(f: &TruthTable, limits: &Limits) -> Result<ComponentReport> {
    let report = sensitivity_report(f, limits)?;
    let n = f.arity();
    let mut seen = vec![false; f.len() as usize];
    let mut components = Vec::new();
    for start in f.ones() {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for p in 0..n {
                let y = x ^ (1 << p);
                if f.get(y) && !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        components.push(SubcubeComponent::from_members(n, members));
    }
    let mut distances = Vec::new();
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            distances.push((i, j, components[i].distance(&components[j])));
        }
    }
    let min_distance = distances.iter().map(|d| d.2).min();
    let hypothesis = report.has_zero && report.has_one && report.s0 == 1;
    let claim_holds = hypothesis.then(|| {
        components.iter().all(|c| c.is_subcube) && min_distance.is_none_or(|d| d >= 3)
    });
    Ok(ComponentReport {
        components,
        distances,
        min_distance,
        s0: report.s0,
        hypothesis,
        claim_holds,
    })
}

/// One term per 1-set subcube hit by a maximum block family at `0^n`.
///
/// Needs `s0(g) = 1`, `g(0^n) = 0` and `bs0(g)` attained at `0^n`. Each block
/// `B` of the lexicographically smallest optimal family lands, when flipped
/// from `0^n`, in a distinct subcube; that subcube's fixed literals form the term.
pub fn hypercubes_to_dnf(g: &TruthTable, limits: &Limits) -> Result<Dnf> {
    let report = block_sensitivity_report(g, limits)?;
    if !report.has_zero || !report.has_one {
        return Err(Error::Hypothesis("g is constant".into()));
    }
    if report.s0 != 1 {
        return Err(Error::Hypothesis(format!("s0(g) = {}, expected 1", report.s0)));
    }
    if g.get(0) {
        return Err(Error::Hypothesis("g(0^n) = 1".into()));
    }
    let (at_zero, blocks) = block_sensitivity_at(g, 0, limits)?;
    let bs0 = report.bs0().expect("block measures computed");
    if at_zero != bs0 {
        return Err(Error::Hypothesis(format!(
            "bs0(g) = {bs0} is not attained at 0^n (bs(g, 0^n) = {at_zero})"
        )));
    }
    let comps = one_set_components(g, limits)?;
    if let Some(c) = comps.components.iter().find(|c| !c.is_subcube) {
        return Err(Error::Internal(format!(
            "s0 = 1 but a 1-set component is not a subcube: {c}"
        )));
    }
    let mut used = vec![false; comps.components.len()];
    let mut terms = Vec::with_capacity(blocks.len());
    for &b in blocks.blocks() {
        let k = comps
            .components
            .iter()
            .position(|c| c.contains(b))
            .ok_or_else(|| Error::Internal(format!("block {} is not sensitive", format_set(b))))?;
        if std::mem::replace(&mut used[k], true) {
            return Err(Error::Internal(format!(
                "two blocks land in the subcube {}",
                comps.components[k]
            )));
        }
        terms.push(comps.components[k].term());
    }
    debug_assert!(terms.iter().all(|t| positions(t.pos()).count() > 0));
    Dnf::new(g.arity(), terms)
}
