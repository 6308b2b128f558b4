//! Explicit truth tables stored as packed bit vectors.

use std::fmt;

use crate::bits::{positions, Input};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Masks selecting the positions whose bit `i` is clear, for `i < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A Boolean function on `arity` variables given by all `2^arity` values.
///
/// Row `x` holds `f(x)`; variable `i` is bit `i - 1` of `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

/// Number of `u64` words backing a bitset over `2^arity` positions.
pub(crate) fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Mask of the valid bits of each word for a bitset over `2^arity` positions.
pub(crate) fn tail_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << arity)) - 1
    }
}

/// In place, replaces `set(B)` by `set(B ^ e_var)` (0-based `var`).
pub(crate) fn flip_axis(words: &mut [u64], var: usize) {
    if var < 6 {
        let m = LOW_HALF[var];
        let s = 1u32 << var;
        for w in words.iter_mut() {
            *w = ((*w & m) << s) | ((*w >> s) & m);
        }
    } else {
        let stride = 1usize << (var - 6);
        for j in 0..words.len() {
            if j & stride == 0 {
                words.swap(j, j | stride);
            }
        }
    }
}

/// In place, ORs `set(B \ {var})` into `set(B)` for every `B` containing `var`.
pub(crate) fn or_up_axis(words: &mut [u64], var: usize) {
    if var < 6 {
        let m = LOW_HALF[var];
        let s = 1u32 << var;
        for w in words.iter_mut() {
            *w |= (*w & m) << s;
        }
    } else {
        let stride = 1usize << (var - 6);
        for j in 0..words.len() {
            if j & stride != 0 {
                words[j] |= words[j ^ stride];
            }
        }
    }
}

/// `dst(B) |= src(B \ {var})` for `B` containing `var`; positions without `var` untouched.
pub(crate) fn or_shifted_up(dst: &mut [u64], src: &[u64], var: usize) {
    if var < 6 {
        let m = LOW_HALF[var];
        let s = 1u32 << var;
        for (d, w) in dst.iter_mut().zip(src) {
            *d |= (*w & m) << s;
        }
    } else {
        let stride = 1usize << (var - 6);
        for j in 0..dst.len() {
            if j & stride != 0 {
                dst[j] |= src[j ^ stride];
            }
        }
    }
}

impl TruthTable {
    /// Hard ceiling on table size regardless of [`Limits`].
    pub const MAX_ARITY: usize = 30;

    /// Builds a table by evaluating `f` on every input.
    ///
    /// Panics if `arity > MAX_ARITY`; callers check [`Limits`] first.
    pub fn from_fn(arity: usize, mut f: impl FnMut(Input) -> bool) -> Self {
        assert!(
            arity <= Self::MAX_ARITY,
            "truth table arity {arity} exceeds {}",
            Self::MAX_ARITY
        );
        let mut words = vec![0u64; word_count(arity)];
        for x in 0..(1u64 << arity) {
            if f(x) {
                words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        TruthTable { arity, words }
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_fn(arity, |_| value)
    }

    pub fn from_values(values: &[bool]) -> Result<Self> {
        let n = values.len();
        if !n.is_power_of_two() {
            return Err(Error::OutOfRange(format!(
                "value count {n} is not a power of two"
            )));
        }
        let arity = n.trailing_zeros() as usize;
        Ok(Self::from_fn(arity, |x| values[x as usize]))
    }

    pub(crate) fn from_words(arity: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(arity));
        if let Some(w) = words.last_mut() {
            *w &= tail_mask(arity);
        }
        TruthTable { arity, words }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> u64 {
        1u64 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: Input) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: Input, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if value {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `Some(v)` when every row equals `v`.
    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() => Some(true),
            _ => None,
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = Input> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(j, &w)| positions(w).map(move |p| ((j as u64) << 6) | p as u64))
    }

    /// The table of `x -> f(x ^ shift)`.
    pub fn shifted(&self, shift: Input) -> TruthTable {
        let mut words = self.words.clone();
        for p in positions(shift) {
            flip_axis(&mut words, p);
        }
        Self::from_words(self.arity, words)
    }

    pub fn complement(&self) -> TruthTable {
        Self::from_words(self.arity, self.words.iter().map(|w| !w).collect())
    }

    /// Bit mask (over all rows) of the inputs whose value changes when `var` (0-based) flips.
    pub(crate) fn edge_diff(&self, var: usize) -> Vec<u64> {
        let mut flipped = self.words.clone();
        flip_axis(&mut flipped, var);
        let tail = tail_mask(self.arity);
        flipped
            .iter()
            .zip(&self.words)
            .map(|(a, b)| (a ^ b) & tail)
            .collect()
    }

    /// 1-based indices of the variables `f` depends on.
    pub fn relevant_variables(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&v| self.edge_diff(v).iter().any(|&w| w != 0))
            .map(|v| v + 1)
            .collect()
    }

    /// Serializes in the `tt` file format.
    pub fn to_file_string(&self) -> String {
        format!("tt {}\n{}\n", self.arity, self.to_hex())
    }

    /// Hex digits, least-significant digit first; bit `k` of the stream is row `k`.
    pub fn to_hex(&self) -> String {
        let digits = ((1usize << self.arity) / 4).max(1);
        (0..digits)
            .map(|d| {
                let w = self.words[d / 16];
                let nib = (w >> ((d % 16) * 4)) & 0xF;
                char::from_digit(nib as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `tt <arity>` header"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("tt") {
            return Err(Error::parse(hline, 1, "expected `tt <arity>` header"));
        }
        let arity: usize = parts
            .next()
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::parse(hline, 4, "missing or malformed arity"))?;
        if parts.next().is_some() {
            return Err(Error::parse(hline, header.len(), "trailing tokens after arity"));
        }
        if arity > Self::MAX_ARITY {
            return Err(Error::Capacity {
                what: "truth table file",
                arity,
                limit: Self::MAX_ARITY,
            });
        }
        let (dline, hex) = lines
            .next()
            .ok_or_else(|| Error::parse(hline + 1, 1, "missing hex value line"))?;
        let digits = ((1usize << arity) / 4).max(1);
        if hex.len() != digits {
            return Err(Error::parse(
                dline,
                1,
                format!("expected {digits} hex digits, found {}", hex.len()),
            ));
        }
        let mut words = vec![0u64; word_count(arity)];
        for (d, c) in hex.chars().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Error::parse(dline, d + 1, format!("bad hex digit {c:?}")))?
                as u64;
            words[d / 16] |= nib << ((d % 16) * 4);
        }
        if words[0] & !tail_mask(arity) != 0 {
            return Err(Error::parse(dline, 1, "bits set beyond the last row"));
        }
        if let Some((l, _)) = lines.next() {
            return Err(Error::parse(l, 1, "unexpected content after hex line"));
        }
        Ok(TruthTable { arity, words })
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(tt {} {})", self.arity, self.to_hex())
    }
}

/// Pointwise XOR of two tables of equal arity.
pub fn xor_tt(f: &TruthTable, g: &TruthTable) -> Result<TruthTable> {
    if f.arity != g.arity {
        return Err(Error::ArityMismatch {
            left: f.arity,
            right: g.arity,
        });
    }
    Ok(TruthTable::from_words(
        f.arity,
        f.words.iter().zip(&g.words).map(|(a, b)| a ^ b).collect(),
    ))
}

/// True iff `f(x) <= f(y)` along every cube edge `x -> y` that sets one bit.
pub fn is_monotone(f: &TruthTable, limits: &Limits) -> Result<bool> {
    limits.check_table("is_monotone", f.arity)?;
    for v in 0..f.arity {
        let mut flipped = f.words.clone();
        flip_axis(&mut flipped, v);
        // rows with bit v clear whose value is 1 while the row above is 0
        let m = if v < 6 { LOW_HALF[v] } else { u64::MAX };
        for (j, (a, b)) in f.words.iter().zip(&flipped).enumerate() {
            if v >= 6 && (j >> (v - 6)) & 1 == 1 {
                continue;
            }
            if a & !b & m & tail_mask(f.arity) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
