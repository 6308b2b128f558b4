//! Bit-level conventions shared by every module.
//!
//! Variable `i` (1-based) is bit `i - 1` of an input word, so the row index of a
//! truth table is the input itself. Sets of variables use the same encoding.
//! Bit strings are written with variable 1 first.

use crate::error::{Error, Result};

/// An assignment to at most 64 variables; variable `i` is bit `i - 1`.
pub type Input = u64;

/// A set of variables in the same bit encoding as [`Input`].
pub type VarSet = u64;

/// Largest arity representable by [`Input`].
pub const MAX_VARS: usize = 64;

pub fn all_vars(arity: usize) -> VarSet {
    if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    }
}

pub fn var_bit(var: usize) -> VarSet {
    debug_assert!((1..=MAX_VARS).contains(&var));
    1u64 << (var - 1)
}

/// Iterates the set bits of `set` as 0-based positions, ascending.
pub fn positions(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let p = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(p)
        }
    })
}

/// 1-based variable indices of `set`, ascending.
pub fn vars(set: VarSet) -> Vec<usize> {
    positions(set).map(|p| p + 1).collect()
}

pub fn set_from_vars(vars: &[usize]) -> VarSet {
    vars.iter().fold(0, |acc, &v| acc | var_bit(v))
}

/// Lexicographic order on sets compared as ascending variable lists.
pub fn cmp_lex(a: VarSet, b: VarSet) -> std::cmp::Ordering {
    positions(a).cmp(positions(b))
}

pub fn format_bits(x: Input, arity: usize) -> String {
    (0..arity)
        .map(|p| if (x >> p) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bits(s: &str, arity: usize) -> Result<Input> {
    if s.len() != arity {
        return Err(Error::parse(
            0,
            0,
            format!("bit string {s:?} has length {}, expected {arity}", s.len()),
        ));
    }
    let mut x = 0;
    for (p, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => x |= 1 << p,
            _ => {
                return Err(Error::parse(0, p + 1, format!("bad bit {c:?} in {s:?}")));
            }
        }
    }
    Ok(x)
}

/// Renders a variable set as `{1,3,4}`.
pub fn format_set(set: VarSet) -> String {
    let inner: Vec<String> = vars(set).iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_strings_put_variable_one_first() {
        assert_eq!(format_bits(0b0011, 4), "1100");
        assert_eq!(parse_bits("1100", 4).unwrap(), 0b0011);
        assert_eq!(parse_bits("11001", 5).unwrap(), 0b10011);
        assert!(parse_bits("101", 4).is_err());
        assert!(parse_bits("1x", 2).is_err());
    }

    #[test]
    fn lex_order_on_sets() {
        use std::cmp::Ordering::*;
        let s = |v: &[usize]| set_from_vars(v);
        assert_eq!(cmp_lex(s(&[1, 3]), s(&[1, 3, 4])), Less);
        assert_eq!(cmp_lex(s(&[1, 3, 4]), s(&[1, 4])), Less);
        assert_eq!(cmp_lex(s(&[2]), s(&[1, 5])), Greater);
    }
}
