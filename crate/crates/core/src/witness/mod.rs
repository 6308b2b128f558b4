//! Explicit high-sensitivity inputs built from DNF structure.

mod constructions;
mod gates;
mod solver;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::Input;

pub use constructions::{
    ones_bound, tblock_bound, witness_2mixing_components, witness_onesbound, zero_bound,
    zero_witness_block, zero_witness_tblock,
};
pub use gates::{greedy_independent_gates, GateGraph, GateMode};
pub use solver::{solve_sensitivity_problem, FunctionRef, Solution};

/// Which value `f` takes at the witness input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub fn value(self) -> bool {
        self == Side::One
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Zero => "0-sensitive",
            Side::One => "1-sensitive",
        })
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Procedure {
    BlockGreedy,
    Onesbound,
    TBlock,
    MixingComponents,
    MonotoneEcho,
    Exhaustive,
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::BlockGreedy => "block-greedy",
            Procedure::Onesbound => "onesbound",
            Procedure::TBlock => "t-block",
            Procedure::MixingComponents => "mixing-components",
            Procedure::MonotoneEcho => "monotone-echo",
            Procedure::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Procedure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// An input with a proven lower bound on its sensitivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub arity: usize,
    pub input: Input,
    pub side: Side,
    pub guaranteed_bound: usize,
    pub measured: usize,
    pub procedure: Procedure,
}

impl WitnessResult {
    pub fn meets_bound(&self) -> bool {
        self.measured >= self.guaranteed_bound
    }
}
