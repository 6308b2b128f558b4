use std::borrow::Cow;

use num_rational::Ratio;
use serde::Serialize;

use crate::bits::{all_vars, Input};
use crate::blocks::BlockFamily;
use crate::dnf::{check_compact_form, Dnf};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::measures::{sensitivity_at, sensitivity_report};
use crate::table::{is_monotone, TruthTable};
use crate::witness::gates::{check_mode, check_zero_at_origin, GateMode};
use crate::witness::{witness_onesbound, zero_witness_block, Procedure};

/// The two function representations the solver accepts.
#[derive(Clone, Copy, Debug)]
pub enum FunctionRef<'a> {
    Table(&'a TruthTable),
    Dnf(&'a Dnf),
}

impl FunctionRef<'_> {
    pub fn arity(&self) -> usize {
        match self {
            FunctionRef::Table(t) => t.arity(),
            FunctionRef::Dnf(d) => d.arity(),
        }
    }

    pub fn eval(&self, x: Input) -> bool {
        match self {
            FunctionRef::Table(t) => t.get(x),
            FunctionRef::Dnf(d) => d.eval(x),
        }
    }

    pub fn sensitivity_at(&self, x: Input) -> usize {
        match self {
            FunctionRef::Table(t) => sensitivity_at(t, x),
            FunctionRef::Dnf(d) => d.sensitivity_at(x),
        }
    }

    fn table(&self, limits: &Limits) -> Result<Cow<'_, TruthTable>> {
        match self {
            FunctionRef::Table(t) => {
                limits.check_table("truth table", t.arity())?;
                Ok(Cow::Borrowed(*t))
            }
            FunctionRef::Dnf(d) => Ok(Cow::Owned(d.to_truth_table(limits)?)),
        }
    }

    fn is_monotone(&self, limits: &Limits) -> Result<Option<bool>> {
        if let FunctionRef::Dnf(d) = self {
            if d.terms().iter().all(|t| t.neg() == 0) {
                return Ok(Some(true));
            }
        }
        if limits.check_table("monotonicity", self.arity()).is_err() {
            return Ok(None);
        }
        let table = self.table(limits)?;
        Ok(Some(is_monotone(&table, limits)?))
    }
}

/// An input `y` with `s(f, y)^2 * c >= bs(f, x, blocks)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub y: Input,
    pub block_count: usize,
    pub sensitivity: usize,
    pub procedure: Procedure,
    pub warning: Option<String>,
}

fn satisfies(sensitivity: usize, block_count: usize, c: Ratio<u64>) -> bool {
    let s = sensitivity as u128;
    s * s * *c.numer() as u128 >= block_count as u128 * *c.denom() as u128
}

/// Finds `y` with `s(f, y) >= sqrt(bs(f, x, blocks) / c)`.
///
/// Monotone functions return `x`; block-property formulas with `c >= 4` use
/// the better of the two structural witnesses; anything else is searched
/// exhaustively. Every answer is re-checked before it is returned.
pub fn solve_sensitivity_problem(
    f: FunctionRef<'_>,
    x: Input,
    blocks: &BlockFamily,
    c: Ratio<u64>,
    limits: &Limits,
) -> Result<Solution> {
    let n = f.arity();
    if x & !all_vars(n) != 0 {
        return Err(Error::OutOfRange(format!(
            "input {x:#x} outside a {n}-variable cube"
        )));
    }
    if blocks.blocks().iter().any(|&b| b & !all_vars(n) != 0) {
        return Err(Error::InvalidBlocks("block leaves the variable range".into()));
    }
    if *c.numer() == 0 {
        return Err(Error::OutOfRange("c must be positive".into()));
    }
    let block_count = blocks.count_sensitive(x, |y| f.eval(y));
    let solution = |y: Input, procedure: Procedure, warning: Option<String>| Solution {
        y,
        block_count,
        sensitivity: f.sensitivity_at(y),
        procedure,
        warning,
    };

    if f.is_monotone(limits)? == Some(true) {
        let s = solution(x, Procedure::MonotoneEcho, None);
        if satisfies(s.sensitivity, block_count, c) {
            return Ok(s);
        }
    }

    if let FunctionRef::Dnf(d) = f {
        let structured = check_zero_at_origin(d).is_ok() && check_mode(d, GateMode::Block).is_ok();
        if structured && c >= Ratio::from_integer(4) {
            let z = zero_witness_block(d)?;
            let o = witness_onesbound(d)?;
            let best = if o.measured > z.measured { o } else { z };
            let s = solution(best.input, best.procedure, None);
            if satisfies(s.sensitivity, block_count, c) {
                return Ok(s);
            }
            // the guarantee covers normalized forms, where bs(f) = size
            if limits.check_bs("compact form", n).is_ok()
                && check_compact_form(d, limits)?.is_normalized_compact()
            {
                return Err(Error::Internal(format!(
                    "witness sensitivity {} misses block count {block_count} at c = {c}",
                    s.sensitivity
                )));
            }
        }
    }

    let table = f.table(limits)?;
    let report = sensitivity_report(&table, limits)?;
    let y = report.witness_s().unwrap_or(0);
    let s = solution(
        y,
        Procedure::Exhaustive,
        Some(format!("no structural dispatch applied; searched all 2^{n} inputs")),
    );
    if satisfies(s.sensitivity, block_count, c) {
        Ok(s)
    } else {
        Err(Error::NoSolution(format!(
            "s(f) = {} but {block_count} sensitive blocks need s^2 * {c} >= {block_count}",
            s.sensitivity
        )))
    }
}
