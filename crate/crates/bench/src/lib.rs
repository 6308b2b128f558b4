//! Fixed inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bsens_core::verify::generate::{block_dnf, low_sensitivity_table};
use bsens_core::{Dnf, Limits, TruthTable};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random table on `n` variables.
pub fn random_table(n: usize, seed: u64) -> TruthTable {
    let mut r = rng(seed);
    TruthTable::from_fn(n, |_| rand::Rng::gen_bool(&mut r, 0.5))
}

/// The first sampled block-property formula with exactly `n` variables.
pub fn block_formula(n: usize, seed: u64) -> Dnf {
    let mut r = rng(seed);
    loop {
        let d = block_dnf(&mut r, n, &Limits::DEFAULT).expect("generator");
        if d.arity() == n {
            return d;
        }
    }
}

/// A function on `n` variables with small sensitivity.
pub fn low_sensitivity(n: usize, seed: u64) -> TruthTable {
    let mut r = rng(seed);
    loop {
        let f = low_sensitivity_table(&mut r, n);
        if f.arity() == n {
            return f;
        }
    }
}
