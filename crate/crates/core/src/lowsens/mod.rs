//! Hamming-ball agreement, reconstruction of low-sensitivity functions, and
//! the subcube structure of 1-sets.

mod components;
mod reconstruct;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::{all_vars, format_bits, parse_bits, Input, MAX_VARS};
use crate::dnf::tokens_with_columns;
use crate::error::{Error, Result};
use crate::table::TruthTable;

pub use components::{hypercubes_to_dnf, one_set_components, ComponentReport, SubcubeComponent};
pub use reconstruct::{reconstruct_majority, reconstruct_monotone};

/// Inputs at Hamming distance exactly `d` from `center`, in increasing order of offset.
pub(crate) fn sphere(arity: usize, center: Input, d: usize) -> impl Iterator<Item = Input> {
    let limit = all_vars(arity);
    let mut next = if d > arity {
        None
    } else {
        Some(all_vars(d))
    };
    std::iter::from_fn(move || {
        let y = next?;
        // Gosper's hack: next integer with the same popcount
        next = if y == 0 {
            None
        } else {
            let c = y & y.wrapping_neg();
            let r = y.wrapping_add(c);
            let n = (((r ^ y) >> 2) / c) | r;
            (r != 0 && n & !limit == 0).then_some(n)
        };
        Some(y ^ center)
    })
}

/// Largest radius around a centre on which two functions agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgreementRadius {
    DisagreeAtCenter,
    Radius(usize),
}

pub fn agreement_radius(f: &TruthTable, g: &TruthTable, center: Input) -> Result<AgreementRadius> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            left: f.arity(),
            right: g.arity(),
        });
    }
    if center >= f.len() {
        return Err(Error::OutOfRange(format!("centre {center:#x} outside the cube")));
    }
    let n = f.arity();
    for d in 0..=n {
        if sphere(n, center, d).any(|x| f.get(x) != g.get(x)) {
            return Ok(match d {
                0 => AgreementRadius::DisagreeAtCenter,
                d => AgreementRadius::Radius(d - 1),
            });
        }
    }
    Ok(AgreementRadius::Radius(n))
}

/// Function values on a closed Hamming ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallValues {
    arity: usize,
    center: Input,
    radius: usize,
    values: BTreeMap<Input, bool>,
}

fn ball_size(arity: usize, radius: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for k in 0..=radius.min(arity) {
        total += binom;
        binom = binom * (arity - k) as u128 / (k + 1) as u128;
    }
    total
}

impl BallValues {
    /// Checks that `values` covers exactly the ball.
    pub fn new(
        arity: usize,
        center: Input,
        radius: usize,
        values: BTreeMap<Input, bool>,
    ) -> Result<Self> {
        if arity > MAX_VARS || radius > arity || center & !all_vars(arity) != 0 {
            return Err(Error::OutOfRange(format!(
                "ball of radius {radius} around {center:#x} in {arity} variables"
            )));
        }
        if let Some(&x) = values
            .keys()
            .find(|&&x| x & !all_vars(arity) != 0 || (x ^ center).count_ones() as usize > radius)
        {
            return Err(Error::Inconsistent(format!(
                "point {} lies outside the ball",
                format_bits(x, arity)
            )));
        }
        if values.len() as u128 != ball_size(arity, radius) {
            let missing = (0..=radius)
                .flat_map(|d| sphere(arity, center, d))
                .find(|x| !values.contains_key(x))
                .expect("a point is missing");
            return Err(Error::Inconsistent(format!(
                "ball point {} has no value",
                format_bits(missing, arity)
            )));
        }
        Ok(BallValues {
            arity,
            center,
            radius,
            values,
        })
    }

    pub fn from_table(f: &TruthTable, center: Input, radius: usize) -> Result<Self> {
        let values = (0..=radius.min(f.arity()))
            .flat_map(|d| sphere(f.arity(), center, d))
            .map(|x| (x, f.get(x)))
            .collect();
        BallValues::new(f.arity(), center, radius, values)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn center(&self) -> Input {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: Input) -> Option<bool> {
        self.values.get(&x).copied()
    }

    /// Points in order of distance from the centre.
    pub fn to_file_string(&self) -> String {
        let mut out = format!(
            "ball {} {} {}\n",
            self.arity,
            format_bits(self.center, self.arity),
            self.radius
        );
        for d in 0..=self.radius {
            for x in sphere(self.arity, self.center, d) {
                let _ = writeln!(out, "{} {}", format_bits(x, self.arity), self.values[&x] as u8);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, Input, usize)> = None;
        let mut values = BTreeMap::new();
        let relocate = |line: usize, col: usize, e: Error| match e {
            Error::Parse { column, message, .. } => {
                Error::parse(line, col + column.saturating_sub(1), message)
            }
            other => other,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let tokens = tokens_with_columns(content);
            let Some((n, _, _)) = header else {
                if tokens.first().map(|t| t.1) != Some("ball") || tokens.len() != 4 {
                    return Err(Error::parse(
                        line,
                        1,
                        "expected `ball <arity> <center> <radius>` header",
                    ));
                }
                let (col, a) = tokens[1];
                let n: usize = a
                    .parse()
                    .ok()
                    .filter(|&n| n <= MAX_VARS)
                    .ok_or_else(|| Error::parse(line, col, format!("bad arity {a:?}")))?;
                let center = parse_bits(tokens[2].1, n).map_err(|e| relocate(line, tokens[2].0, e))?;
                let (col, r) = tokens[3];
                let r: usize = r
                    .parse()
                    .ok()
                    .filter(|&r| r <= n)
                    .ok_or_else(|| Error::parse(line, col, format!("bad radius {r:?}")))?;
                header = Some((n, center, r));
                continue;
            };
            if tokens.len() != 2 {
                let col = tokens.get(2).map_or(1, |t| t.0);
                return Err(Error::parse(line, col, "expected `<input> <bit>`"));
            }
            let x = parse_bits(tokens[0].1, n).map_err(|e| relocate(line, tokens[0].0, e))?;
            let bit = match tokens[1].1 {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::parse(line, tokens[1].0, format!("bad bit {other:?}")));
                }
            };
            if values.insert(x, bit).is_some() {
                return Err(Error::parse(line, 1, "point listed twice"));
            }
        }
        let (n, center, r) =
            header.ok_or_else(|| Error::parse(1, 1, "missing `ball` header"))?;
        BallValues::new(n, center, r, values)
    }
}
