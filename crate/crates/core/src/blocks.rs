use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::{all_vars, cmp_lex, format_set, vars, Input, VarSet};
use crate::error::{Error, Result};

/// Pairwise-disjoint, non-empty sets of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BlockFamily {
    blocks: Vec<VarSet>,
}

impl BlockFamily {
    pub fn new(arity: usize, blocks: Vec<VarSet>) -> Result<Self> {
        let universe = all_vars(arity);
        let mut seen = 0;
        for (k, &b) in blocks.iter().enumerate() {
            if b == 0 {
                return Err(Error::InvalidBlocks(format!("block {} is empty", k + 1)));
            }
            if b & !universe != 0 {
                return Err(Error::InvalidBlocks(format!(
                    "block {} = {} leaves [1..{arity}]",
                    k + 1,
                    format_set(b)
                )));
            }
            if b & seen != 0 {
                return Err(Error::InvalidBlocks(format!(
                    "block {} = {} overlaps an earlier block",
                    k + 1,
                    format_set(b)
                )));
            }
            seen |= b;
        }
        Ok(BlockFamily { blocks })
    }

    pub fn from_vars(arity: usize, blocks: &[&[usize]]) -> Result<Self> {
        for b in blocks {
            if let Some(&v) = b.iter().find(|&&v| v == 0 || v > arity) {
                return Err(Error::InvalidBlocks(format!("variable {v} outside [1..{arity}]")));
            }
        }
        Self::new(
            arity,
            blocks.iter().map(|b| crate::bits::set_from_vars(b)).collect(),
        )
    }

    pub(crate) fn from_trusted(blocks: Vec<VarSet>) -> Self {
        BlockFamily { blocks }
    }

    pub fn blocks(&self) -> &[VarSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks as ascending 1-based variable lists.
    pub fn to_vars(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| vars(b)).collect()
    }

    /// The same family with blocks sorted lexicographically.
    pub fn sorted(&self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|&a, &b| cmp_lex(a, b));
        BlockFamily { blocks }
    }

    /// Number of blocks whose flip changes `value_at(x)`.
    pub fn count_sensitive(&self, x: Input, mut value_at: impl FnMut(Input) -> bool) -> usize {
        let fx = value_at(x);
        self.blocks
            .iter()
            .filter(|&&b| value_at(x ^ b) != fx)
            .count()
    }
}

impl fmt::Display for BlockFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|&b| format_set(b)).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for BlockFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vars().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BlockFamily::from_vars(3, &[&[1], &[2, 3]]).is_ok());
        assert!(BlockFamily::from_vars(3, &[&[1, 2], &[2]]).is_err());
        assert!(BlockFamily::from_vars(3, &[&[]]).is_err());
        assert!(BlockFamily::from_vars(3, &[&[4]]).is_err());
        let f = BlockFamily::from_vars(4, &[&[3, 4], &[1, 2]]).unwrap();
        assert_eq!(f.sorted().to_vars(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(f.to_string(), "[{3,4} {1,2}]");
    }
}
