use crate::error::{Error, Result};

/// Size caps for operations that enumerate the whole cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest arity for truth-table operations (sensitivity, monotonicity, ...).
    pub n_max: usize,
    /// Largest arity for exact block sensitivity over all inputs.
    pub bs_max: usize,
    /// Largest variable count produced by explicit OR expansion.
    pub expand_max: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        n_max: 20,
        bs_max: 14,
        expand_max: 32,
    };

    pub fn check_table(&self, what: &'static str, arity: usize) -> Result<()> {
        if arity > self.n_max {
            return Err(Error::Capacity {
                what,
                arity,
                limit: self.n_max,
            });
        }
        Ok(())
    }

    pub fn check_bs(&self, what: &'static str, arity: usize) -> Result<()> {
        let limit = self.bs_max.min(self.n_max);
        if arity > limit {
            return Err(Error::Capacity { what, arity, limit });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}
