//! Exact workbench for sensitivity-type complexity measures of Boolean functions.
//!
//! * [`table`] and [`measures`]: truth tables and exhaustive `s`, `bs`, `bs_ℓ`.
//! * [`dnf`]: DNF formulas, compact-form checks, normalization and structural
//!   properties (block, `t`-block, `ℓ`-mixing, transitive).
//! * [`witness`]: constructive procedures that produce high-sensitivity inputs
//!   from DNF structure, and a solver for the sensitivity search problem.
//! * [`families`]: the classical separating families and disjoint-OR composition.
//! * [`lowsens`]: Hamming-ball agreement, reconstruction of low-sensitivity
//!   functions and subcube structure of 1-sets.
//! * [`verify`]: seeded randomized suites checking the known inequalities.

pub mod bits;
pub mod blocks;
pub mod dnf;
pub mod error;
pub mod families;
pub mod limits;
pub mod lowsens;
pub mod measures;
pub mod table;
pub mod verify;
pub mod witness;

pub use bits::{Input, VarSet};
pub use blocks::BlockFamily;
pub use dnf::{
    check_compact_form, normalize, stats, CompactFormReport, Dnf, DnfStats, Mixing,
    NormalizationResult, Term,
};
pub use error::{Error, Result};
pub use limits::Limits;
pub use measures::{
    block_sensitivity_at, block_sensitivity_report, bs_capped, sensitivity_report,
    BlockMeasures, BlockWitness, MeasureReport,
};
pub use table::{is_monotone, xor_tt, TruthTable};

pub use witness::{Procedure, Side, WitnessResult};
pub use families::{FamilyInstance, FamilyKind};
pub use lowsens::{AgreementRadius, BallValues, SubcubeComponent};
