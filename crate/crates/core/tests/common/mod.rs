//! Naive reference implementations, written from the definitions only.
#![allow(dead_code)]

use std::collections::HashMap;

pub fn sensitivity_at(f: &dyn Fn(u64) -> bool, n: usize, x: u64) -> usize {
    (0..n).filter(|&i| f(x ^ (1 << i)) != f(x)).count()
}

/// `(s0, s1)`.
pub fn sensitivity_sides(f: &dyn Fn(u64) -> bool, n: usize) -> (usize, usize) {
    let mut out = (0, 0);
    for x in 0..1u64 << n {
        let s = sensitivity_at(f, n, x);
        if f(x) {
            out.1 = out.1.max(s);
        } else {
            out.0 = out.0.max(s);
        }
    }
    out
}

/// Largest number of disjoint sensitive blocks of size at most `cap` at `x`.
pub fn block_sensitivity_at(f: &dyn Fn(u64) -> bool, n: usize, x: u64, cap: usize) -> usize {
    let fx = f(x);
    let sensitive: Vec<u64> = (1..1u64 << n)
        .filter(|b| b.count_ones() as usize <= cap && f(x ^ b) != fx)
        .collect();
    // only inclusion-minimal blocks matter for a disjoint packing
    let minimal: Vec<u64> = sensitive
        .iter()
        .copied()
        .filter(|&b| !sensitive.iter().any(|&c| c != b && c & b == c))
        .collect();
    let mut memo = HashMap::new();
    pack((1u64 << n) - 1, &minimal, &mut memo)
}

fn pack(free: u64, blocks: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if free == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&free) {
        return v;
    }
    let low = free & free.wrapping_neg();
    // either the lowest free variable stays unused, or some block covers it
    let mut best = pack(free & !low, blocks, memo);
    for &b in blocks {
        if b & low != 0 && b & !free == 0 {
            best = best.max(1 + pack(free & !b, blocks, memo));
        }
    }
    memo.insert(free, best);
    best
}

/// `(bs0, bs1)` with blocks of size at most `cap`.
pub fn block_sensitivity_sides(f: &dyn Fn(u64) -> bool, n: usize, cap: usize) -> (usize, usize) {
    let mut out = (0, 0);
    for x in 0..1u64 << n {
        let b = block_sensitivity_at(f, n, x, cap);
        if f(x) {
            out.1 = out.1.max(b);
        } else {
            out.0 = out.0.max(b);
        }
    }
    out
}

/// Plain `(s, bs)` of a function given by a closure.
pub fn s_bs(f: &dyn Fn(u64) -> bool, n: usize) -> (usize, usize) {
    let (s0, s1) = sensitivity_sides(f, n);
    let (b0, b1) = block_sensitivity_sides(f, n, n);
    (s0.max(s1), b0.max(b1))
}

/// Largest `r` with `f = g` on the closed ball of radius `r` around `c`; `None`
/// if they differ at `c`.
pub fn agreement_radius(f: &dyn Fn(u64) -> bool, g: &dyn Fn(u64) -> bool, n: usize, c: u64) -> Option<usize> {
    let mut r = None;
    for d in 0..=n {
        let differs = (0..1u64 << n).any(|x| (x ^ c).count_ones() as usize == d && f(x) != g(x));
        if differs {
            return r;
        }
        r = Some(d);
    }
    r
}

/// Terms as `(positive set, negative set)` bitmasks.
pub type Terms = Vec<(u64, u64)>;

pub fn conflicts(a: (u64, u64), b: (u64, u64)) -> u32 {
    (a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()
}

pub fn shares(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 | a.1) & (b.0 | b.1) != 0
}

pub fn block_property(t: &Terms) -> bool {
    t.iter().enumerate().all(|(i, a)| t[i + 1..].iter().all(|b| a.0 & b.0 == 0))
}

/// Smallest conflict count over pairs of terms sharing a variable.
pub fn min_mixing(t: &Terms) -> Option<u32> {
    let mut best = None;
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            if shares(a, b) {
                let c = conflicts(a, b);
                best = Some(best.map_or(c, |m: u32| m.min(c)));
            }
        }
    }
    best
}

pub fn transitive(t: &Terms) -> bool {
    let k = t.len();
    (0..k).all(|i| {
        (0..k).all(|j| {
            (0..k).all(|l| {
                i == l || !(shares(t[i], t[j]) && shares(t[j], t[l])) || shares(t[i], t[l])
            })
        })
    })
}

/// Max over terms of the number of terms contradicting it on exactly one variable.
pub fn gamma(t: &Terms) -> usize {
    (0..t.len())
        .map(|i| (0..t.len()).filter(|&j| j != i && conflicts(t[i], t[j]) == 1).count())
        .max()
        .unwrap_or(0)
}

pub fn width(t: &Terms) -> usize {
    t.iter().map(|a| (a.0 | a.1).count_ones() as usize).max().unwrap_or(0)
}

pub fn eval_terms(t: &Terms, x: u64) -> bool {
    t.iter().any(|&(p, q)| x & p == p && x & q == 0)
}
