//! Exact sensitivity and block sensitivity by exhaustive enumeration.
//!
//! Block sensitivity at an input `x` is computed in two steps. First the
//! minimal sensitive blocks are extracted with bit-parallel subset transforms
//! over the table of `B -> f(x ^ B) != f(x)`. Then a maximum disjoint packing
//! of those blocks is found by a memoized search over the set of coordinates
//! still available, always branching on the lowest one.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{all_vars, cmp_lex, positions, Input, VarSet};
use crate::blocks::BlockFamily;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::table::{flip_axis, or_shifted_up, or_up_axis, tail_mask, word_count, TruthTable};

/// `s(f, x)` by direct neighbour evaluation.
pub fn sensitivity_at(f: &TruthTable, x: Input) -> usize {
    let fx = f.get(x);
    (0..f.arity()).filter(|&v| f.get(x ^ (1 << v)) != fx).count()
}

/// `s(f, x)` for every input `x`, indexed by row.
pub fn sensitivity_profile(f: &TruthTable, limits: &Limits) -> Result<Vec<u8>> {
    limits.check_table("sensitivity", f.arity())?;
    let mut counts = vec![0u8; f.len() as usize];
    for v in 0..f.arity() {
        for (j, w) in f.edge_diff(v).into_iter().enumerate() {
            for p in positions(w) {
                counts[(j << 6) | p] += 1;
            }
        }
    }
    Ok(counts)
}

/// A maximum sensitive block family at one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    pub input: Input,
    pub blocks: BlockFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMeasures {
    pub bs0: usize,
    pub bs1: usize,
    pub witness_bs0: Option<BlockWitness>,
    pub witness_bs1: Option<BlockWitness>,
}

/// Sensitivity-type measures of one function.
///
/// A side with no inputs (`has_zero` / `has_one` false) reports 0 and no
/// witness. Reports produced by composition carry values but no witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub arity: usize,
    pub has_zero: bool,
    pub has_one: bool,
    pub s0: usize,
    pub s1: usize,
    pub witness_s0: Option<Input>,
    pub witness_s1: Option<Input>,
    /// Present once block sensitivity has been computed.
    pub block: Option<BlockMeasures>,
}

impl MeasureReport {
    pub fn s(&self) -> usize {
        self.s0.max(self.s1)
    }

    /// Lowest-index input attaining `s`.
    pub fn witness_s(&self) -> Option<Input> {
        pick_side(self.s0, self.witness_s0, self.s1, self.witness_s1)
    }

    pub fn bs(&self) -> Option<usize> {
        self.block.as_ref().map(|b| b.bs0.max(b.bs1))
    }

    pub fn bs0(&self) -> Option<usize> {
        self.block.as_ref().map(|b| b.bs0)
    }

    pub fn bs1(&self) -> Option<usize> {
        self.block.as_ref().map(|b| b.bs1)
    }

    /// Lowest-index input attaining `bs`, with its block family.
    pub fn witness_bs(&self) -> Option<&BlockWitness> {
        let b = self.block.as_ref()?;
        let input = pick_side(
            b.bs0,
            b.witness_bs0.as_ref().map(|w| w.input),
            b.bs1,
            b.witness_bs1.as_ref().map(|w| w.input),
        )?;
        [&b.witness_bs0, &b.witness_bs1]
            .into_iter()
            .flatten()
            .find(|w| w.input == input)
    }
}

fn pick_side(v0: usize, w0: Option<Input>, v1: usize, w1: Option<Input>) -> Option<Input> {
    match v0.cmp(&v1) {
        std::cmp::Ordering::Greater => w0.or(w1),
        std::cmp::Ordering::Less => w1.or(w0),
        std::cmp::Ordering::Equal => match (w0, w1) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        },
    }
}

/// `s`, `s0`, `s1` with lowest-index witnesses; block fields are left empty.
pub fn sensitivity_report(f: &TruthTable, limits: &Limits) -> Result<MeasureReport> {
    let profile = sensitivity_profile(f, limits)?;
    Ok(sensitivity_from_profile(f, &profile))
}

fn sensitivity_from_profile(f: &TruthTable, profile: &[u8]) -> MeasureReport {
    let mut best: [Option<(usize, Input)>; 2] = [None, None];
    for (x, &c) in profile.iter().enumerate() {
        let side = f.get(x as Input) as usize;
        let c = c as usize;
        if best[side].is_none_or(|(v, _)| c > v) {
            best[side] = Some((c, x as Input));
        }
    }
    MeasureReport {
        arity: f.arity(),
        has_zero: best[0].is_some(),
        has_one: best[1].is_some(),
        s0: best[0].map_or(0, |b| b.0),
        s1: best[1].map_or(0, |b| b.0),
        witness_s0: best[0].map(|b| b.1),
        witness_s1: best[1].map(|b| b.1),
        block: None,
    }
}

/// Minimal sensitive blocks at one input and a memoized maximum packing over them.
pub(crate) struct Packer {
    arity: usize,
    sens: Vec<u64>,
    up: Vec<u64>,
    below: Vec<u64>,
    by_low: Vec<Vec<VarSet>>,
    singles: VarSet,
    stamp: Vec<u32>,
    memo: Vec<u8>,
    epoch: u32,
}

impl Packer {
    pub(crate) fn new(arity: usize) -> Self {
        let words = word_count(arity);
        Packer {
            arity,
            sens: vec![0; words],
            up: vec![0; words],
            below: vec![0; words],
            by_low: vec![Vec::new(); arity],
            singles: 0,
            stamp: vec![0; 1 << arity],
            memo: vec![0; 1 << arity],
            epoch: 0,
        }
    }

    /// Prepares the minimal sensitive blocks of size at most `cap` at `x`.
    pub(crate) fn load(&mut self, f: &TruthTable, x: Input, cap: usize) {
        debug_assert_eq!(f.arity(), self.arity);
        let tail = tail_mask(self.arity);
        self.sens.copy_from_slice(f.words());
        for p in positions(x) {
            flip_axis(&mut self.sens, p);
        }
        if f.get(x) {
            for w in self.sens.iter_mut() {
                *w = !*w;
            }
        }
        if let Some(w) = self.sens.last_mut() {
            *w &= tail;
        }
        self.up.copy_from_slice(&self.sens);
        for v in 0..self.arity {
            or_up_axis(&mut self.up, v);
        }
        self.below.iter_mut().for_each(|w| *w = 0);
        for v in 0..self.arity {
            or_shifted_up(&mut self.below, &self.up, v);
        }
        for list in self.by_low.iter_mut() {
            list.clear();
        }
        self.singles = 0;
        for (j, (&s, &b)) in self.sens.iter().zip(&self.below).enumerate() {
            for p in positions(s & !b & tail) {
                let block = ((j as u64) << 6) | p as u64;
                let size = block.count_ones() as usize;
                if size > cap {
                    continue;
                }
                if size == 1 {
                    self.singles |= block;
                }
                self.by_low[block.trailing_zeros() as usize].push(block);
            }
        }
        for list in self.by_low.iter_mut() {
            list.sort_by(|&a, &b| cmp_lex(a, b));
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    /// Maximum number of disjoint loaded blocks inside `mask`.
    pub(crate) fn best(&mut self, mask: VarSet) -> usize {
        if mask == 0 {
            return 0;
        }
        let idx = mask as usize;
        if self.stamp[idx] == self.epoch {
            return self.memo[idx] as usize;
        }
        let low = mask.trailing_zeros() as usize;
        let bit = 1u64 << low;
        let r = if self.singles & bit != 0 {
            // a sensitive singleton is the only minimal block through `low`
            1 + self.best(mask & !bit)
        } else {
            let mut r = self.best(mask & !bit);
            for k in 0..self.by_low[low].len() {
                let b = self.by_low[low][k];
                if b & mask == b {
                    r = r.max(1 + self.best(mask & !b));
                }
            }
            r
        };
        self.stamp[idx] = self.epoch;
        self.memo[idx] = r as u8;
        r
    }

    /// The lexicographically smallest optimal family over all coordinates.
    pub(crate) fn family(&mut self) -> Vec<VarSet> {
        let mut mask = all_vars(self.arity);
        let mut out = Vec::new();
        while mask != 0 {
            let target = self.best(mask);
            if target == 0 {
                break;
            }
            let low = mask.trailing_zeros() as usize;
            let mut taken = None;
            for k in 0..self.by_low[low].len() {
                let b = self.by_low[low][k];
                if b & mask == b && 1 + self.best(mask & !b) == target {
                    taken = Some(b);
                    break;
                }
            }
            match taken {
                Some(b) => {
                    out.push(b);
                    mask &= !b;
                }
                None => mask &= !(1u64 << low),
            }
        }
        out
    }
}

/// `bs(f, x)` with the lexicographically smallest optimal block family.
pub fn block_sensitivity_at(
    f: &TruthTable,
    x: Input,
    limits: &Limits,
) -> Result<(usize, BlockFamily)> {
    limits.check_table("block_sensitivity_at", f.arity())?;
    check_input(f, x)?;
    let mut packer = Packer::new(f.arity());
    packer.load(f, x, f.arity());
    let family = packer.family();
    Ok((family.len(), BlockFamily::from_trusted(family)))
}

/// `bs_ℓ(f, x)`: blocks restricted to at most `cap` coordinates.
pub fn block_sensitivity_at_capped(
    f: &TruthTable,
    x: Input,
    cap: usize,
    limits: &Limits,
) -> Result<(usize, BlockFamily)> {
    limits.check_table("block_sensitivity_at", f.arity())?;
    check_input(f, x)?;
    check_cap(f, cap)?;
    let mut packer = Packer::new(f.arity());
    packer.load(f, x, cap);
    let family = packer.family();
    Ok((family.len(), BlockFamily::from_trusted(family)))
}

fn check_input(f: &TruthTable, x: Input) -> Result<()> {
    if x >= f.len() {
        return Err(Error::OutOfRange(format!(
            "input {x:#x} outside a {}-variable cube",
            f.arity()
        )));
    }
    Ok(())
}

fn check_cap(f: &TruthTable, cap: usize) -> Result<()> {
    if cap == 0 || cap > f.arity() {
        return Err(Error::OutOfRange(format!(
            "block size cap {cap} outside 1..={}",
            f.arity()
        )));
    }
    Ok(())
}

/// `bs(f, x, B_1..B_k)`: how many of the given blocks are sensitive at `x`.
pub fn block_count_at(f: &TruthTable, x: Input, blocks: &BlockFamily) -> Result<usize> {
    check_input(f, x)?;
    if blocks.blocks().iter().any(|&b| b & !all_vars(f.arity()) != 0) {
        return Err(Error::InvalidBlocks("block leaves the variable range".into()));
    }
    Ok(blocks.count_sensitive(x, |y| f.get(y)))
}

/// Per side, the maximum capped block sensitivity and the lowest input attaining it.
fn side_maxima(f: &TruthTable, profile: &[u8], cap: usize) -> [Option<(usize, Input)>; 2] {
    let n = f.arity();
    let total = f.len() as usize;
    let chunk = 256.min(total);
    let chunks = total.div_ceil(chunk);
    // best value seen so far per side, plus one (0 = none yet)
    let global = [AtomicUsize::new(0), AtomicUsize::new(0)];
    let locals: Vec<[Option<(usize, Input)>; 2]> = (0..chunks)
        .into_par_iter()
        .map_init(
            || Packer::new(n),
            |packer, c| {
                let mut best: [Option<(usize, Input)>; 2] = [None, None];
                for x in (c * chunk)..((c + 1) * chunk).min(total) {
                    let side = f.get(x as Input) as usize;
                    let s = profile[x] as usize;
                    let upper = if cap == 1 { s } else { s + (n - s) / 2 };
                    if best[side].is_some_and(|(v, _)| upper <= v) {
                        continue;
                    }
                    let g = global[side].load(Ordering::Relaxed);
                    if g > 0 && upper < g - 1 {
                        continue;
                    }
                    let value = if upper == s {
                        s
                    } else {
                        packer.load(f, x as Input, cap);
                        packer.best(all_vars(n))
                    };
                    if best[side].is_none_or(|(v, _)| value > v) {
                        best[side] = Some((value, x as Input));
                        global[side].fetch_max(value + 1, Ordering::Relaxed);
                    }
                }
                best
            },
        )
        .collect();
    let mut merged: [Option<(usize, Input)>; 2] = [None, None];
    for local in locals {
        for side in 0..2 {
            if let Some((v, x)) = local[side] {
                if merged[side].is_none_or(|(mv, mx)| v > mv || (v == mv && x < mx)) {
                    merged[side] = Some((v, x));
                }
            }
        }
    }
    merged
}

/// Full report: sensitivity and block sensitivity per side, with witnesses.
pub fn block_sensitivity_report(f: &TruthTable, limits: &Limits) -> Result<MeasureReport> {
    limits.check_bs("block_sensitivity_report", f.arity())?;
    let profile = sensitivity_profile(f, limits)?;
    let mut report = sensitivity_from_profile(f, &profile);
    let maxima = side_maxima(f, &profile, f.arity().max(1));
    let mut packer = Packer::new(f.arity());
    let mut witness = |m: Option<(usize, Input)>| {
        m.map(|(_, x)| {
            packer.load(f, x, f.arity());
            BlockWitness {
                input: x,
                blocks: BlockFamily::from_trusted(packer.family()),
            }
        })
    };
    let witness_bs0 = witness(maxima[0]);
    let witness_bs1 = witness(maxima[1]);
    report.block = Some(BlockMeasures {
        bs0: maxima[0].map_or(0, |m| m.0),
        bs1: maxima[1].map_or(0, |m| m.0),
        witness_bs0,
        witness_bs1,
    });
    Ok(report)
}

/// `bs_ℓ(f)`: block sensitivity with every block of size at most `cap`.
pub fn bs_capped(f: &TruthTable, cap: usize, limits: &Limits) -> Result<usize> {
    limits.check_bs("bs_capped", f.arity())?;
    check_cap(f, cap)?;
    let profile = sensitivity_profile(f, limits)?;
    let maxima = side_maxima(f, &profile, cap);
    Ok(maxima.iter().flatten().map(|m| m.0).max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::set_from_vars;

    const L: Limits = Limits::DEFAULT;

    fn or_n(n: usize) -> TruthTable {
        TruthTable::from_fn(n, |x| x != 0)
    }

    fn and2() -> TruthTable {
        TruthTable::from_fn(2, |x| x == 3)
    }

    fn rubinstein_g2() -> TruthTable {
        TruthTable::from_fn(4, |x| x == 0b0011 || x == 0b1100)
    }

    #[test]
    fn sensitivity_examples() {
        let zero = sensitivity_report(&TruthTable::constant(3, false), &L).unwrap();
        assert_eq!((zero.s(), zero.s0, zero.s1), (0, 0, 0));
        assert!(!zero.has_one);
        assert_eq!(zero.witness_s1, None);

        let or3 = sensitivity_report(&or_n(3), &L).unwrap();
        assert_eq!((or3.s(), or3.s1), (3, 1));
        assert_eq!(or3.witness_s(), Some(0));

        let a = sensitivity_report(&and2(), &L).unwrap();
        assert_eq!((a.s(), a.s0, a.s1), (2, 1, 2));
        assert_eq!(a.witness_s(), Some(3));
    }

    #[test]
    fn block_sensitivity_at_examples() {
        let (k, fam) = block_sensitivity_at(&or_n(3), 0, &L).unwrap();
        assert_eq!(k, 3);
        assert_eq!(fam.to_vars(), vec![vec![1], vec![2], vec![3]]);

        let (k, fam) = block_sensitivity_at(&rubinstein_g2(), 0, &L).unwrap();
        assert_eq!(k, 2);
        assert_eq!(fam.to_vars(), vec![vec![1, 2], vec![3, 4]]);

        let (k, fam) = block_sensitivity_at(&and2(), 0, &L).unwrap();
        assert_eq!(k, 1);
        assert_eq!(fam.to_vars(), vec![vec![1, 2]]);
    }

    #[test]
    fn block_sensitivity_report_examples() {
        let r = block_sensitivity_report(&or_n(3), &L).unwrap();
        assert_eq!(r.bs(), Some(3));
        let r = block_sensitivity_report(&and2(), &L).unwrap();
        assert_eq!((r.bs(), r.bs0(), r.bs1()), (Some(2), Some(1), Some(2)));
        let w = r.witness_bs().unwrap();
        assert_eq!(w.input, 3);
        assert_eq!(w.blocks.to_vars(), vec![vec![1], vec![2]]);
    }

    #[test]
    fn capped_examples() {
        let g = rubinstein_g2();
        assert_eq!(block_sensitivity_at_capped(&g, 0, 2, &L).unwrap().0, 2);
        assert_eq!(block_sensitivity_at_capped(&g, 0, 1, &L).unwrap().0, 0);
        assert_eq!(bs_capped(&g, 1, &L).unwrap(), 4);
        assert_eq!(bs_capped(&or_n(3), 3, &L).unwrap(), 3);
        assert!(matches!(bs_capped(&g, 0, &L), Err(Error::OutOfRange(_))));
        assert!(matches!(bs_capped(&g, 5, &L), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn capacity_errors() {
        let small = Limits {
            n_max: 3,
            bs_max: 3,
            ..L
        };
        let f = or_n(4);
        assert!(matches!(sensitivity_report(&f, &small), Err(Error::Capacity { .. })));
        assert!(matches!(block_sensitivity_report(&f, &small), Err(Error::Capacity { .. })));
        assert!(matches!(block_sensitivity_at(&f, 0, &small), Err(Error::Capacity { .. })));
    }

    #[test]
    fn block_count_counts_given_blocks() {
        let g = rubinstein_g2();
        let blocks = BlockFamily::new(4, vec![set_from_vars(&[1, 2]), set_from_vars(&[3])]).unwrap();
        assert_eq!(block_count_at(&g, 0, &blocks).unwrap(), 1);
    }

    #[test]
    fn lexicographic_family_choice() {
        // f = 1 iff x1 and (x2 or x3), at 000: minimal blocks {1,2},{1,3}; the smaller one wins
        let f = TruthTable::from_fn(3, |x| x & 1 == 1 && x & 6 != 0);
        let (_, fam) = block_sensitivity_at(&f, 0, &L).unwrap();
        assert_eq!(fam.to_vars(), vec![vec![1, 2]]);
    }
}
