//! DNF formulas and the structural notions defined on them.

mod compact;
mod normalize;
mod stats;

use std::fmt;

use serde::Serialize;

use crate::bits::{all_vars, format_set, set_from_vars, var_bit, vars, Input, VarSet, MAX_VARS};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::table::TruthTable;

pub use compact::{check_compact_form, private_assignment, CompactFormReport};
pub use normalize::{normalize, prime_implicants, NormalizationResult};
pub use stats::{bounds_report, stats, term_components, BoundsReport, DnfStats, Mixing, TermComponent};

/// A conjunction of literals: `pos` variables must be 1, `neg` variables 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pos: VarSet,
    neg: VarSet,
}

impl Term {
    pub fn new(pos: VarSet, neg: VarSet) -> Result<Self> {
        if pos & neg != 0 {
            return Err(Error::OutOfRange(format!(
                "term uses {} both positively and negatively",
                format_set(pos & neg)
            )));
        }
        Ok(Term { pos, neg })
    }

    /// Builds a term from 1-based variable lists.
    pub fn from_vars(pos: &[usize], neg: &[usize]) -> Result<Self> {
        if let Some(&v) = pos.iter().chain(neg).find(|&&v| v == 0 || v > MAX_VARS) {
            return Err(Error::OutOfRange(format!("variable index {v} out of range")));
        }
        Term::new(set_from_vars(pos), set_from_vars(neg))
    }

    pub fn pos(&self) -> VarSet {
        self.pos
    }

    pub fn neg(&self) -> VarSet {
        self.neg
    }

    pub fn support(&self) -> VarSet {
        self.pos | self.neg
    }

    pub fn width(&self) -> usize {
        self.support().count_ones() as usize
    }

    #[inline]
    pub fn eval(&self, x: Input) -> bool {
        x & self.pos == self.pos && x & self.neg == 0
    }

    /// `|A_i ∩ Ā_j| + |A_j ∩ Ā_i|`: the number of variables on which the terms contradict.
    pub fn conflicts(&self, other: &Term) -> usize {
        ((self.pos & other.neg) | (other.pos & self.neg)).count_ones() as usize
    }

    pub fn shares_variable(&self, other: &Term) -> bool {
        self.support() & other.support() != 0
    }

    pub(crate) fn shifted(&self, offset: usize) -> Term {
        Term {
            pos: self.pos << offset,
            neg: self.neg << offset,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support() == 0 {
            return f.write_str("*");
        }
        let lits: Vec<String> = vars(self.pos)
            .into_iter()
            .map(|v| format!("+{v}"))
            .chain(vars(self.neg).into_iter().map(|v| format!("-{v}")))
            .collect();
        f.write_str(&lits.join(" "))
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            pos: Vec<usize>,
            neg: Vec<usize>,
        }
        Repr {
            pos: vars(self.pos),
            neg: vars(self.neg),
        }
        .serialize(s)
    }
}

/// An OR of terms over variables `1..=arity`. Zero terms is the constant-0 formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Dnf {
    arity: usize,
    terms: Vec<Term>,
}

impl Dnf {
    pub fn new(arity: usize, terms: Vec<Term>) -> Result<Self> {
        if arity > MAX_VARS {
            return Err(Error::Capacity {
                what: "dnf",
                arity,
                limit: MAX_VARS,
            });
        }
        let universe = all_vars(arity);
        if let Some((i, t)) = terms
            .iter()
            .enumerate()
            .find(|(_, t)| t.support() & !universe != 0)
        {
            return Err(Error::OutOfRange(format!(
                "term {} uses {} beyond arity {arity}",
                i + 1,
                format_set(t.support() & !universe)
            )));
        }
        Ok(Dnf { arity, terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `d∨`: number of terms.
    pub fn size(&self) -> usize {
        self.terms.len()
    }

    /// `d∧`: largest term width.
    pub fn width(&self) -> usize {
        self.terms.iter().map(Term::width).max().unwrap_or(0)
    }

    #[inline]
    pub fn eval(&self, x: Input) -> bool {
        self.terms.iter().any(|t| t.eval(x))
    }

    /// `s(f, x)` by `n` neighbour evaluations; needs no truth table.
    pub fn sensitivity_at(&self, x: Input) -> usize {
        let fx = self.eval(x);
        (0..self.arity)
            .filter(|&p| self.eval(x ^ (1 << p)) != fx)
            .count()
    }

    pub fn to_truth_table(&self, limits: &Limits) -> Result<TruthTable> {
        limits.check_table("to_truth_table", self.arity)?;
        Ok(TruthTable::from_fn(self.arity, |x| self.eval(x)))
    }

    /// The formula with the terms at `indices` removed.
    pub fn without_terms(&self, indices: &[usize]) -> Dnf {
        Dnf {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .enumerate()
                .filter(|(i, _)| !indices.contains(i))
                .map(|(_, t)| *t)
                .collect(),
        }
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("dnf {}\n", self.arity);
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the `dnf` file format. `*` on its own line is the empty (always-true) term.
    pub fn parse(text: &str) -> Result<Self> {
        let mut arity = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let tokens = tokens_with_columns(content);
            let Some(n) = arity else {
                if tokens.first().map(|t| t.1) != Some("dnf") {
                    return Err(Error::parse(line, 1, "expected `dnf <arity>` header"));
                }
                let (col, a) = *tokens
                    .get(1)
                    .ok_or_else(|| Error::parse(line, content.len() + 1, "missing arity"))?;
                let a: usize = a
                    .parse()
                    .map_err(|_| Error::parse(line, col, format!("bad arity {a:?}")))?;
                if a > MAX_VARS {
                    return Err(Error::parse(line, col, format!("arity {a} exceeds {MAX_VARS}")));
                }
                if let Some(&(col, _)) = tokens.get(2) {
                    return Err(Error::parse(line, col, "trailing tokens after arity"));
                }
                arity = Some(a);
                continue;
            };
            if tokens.len() == 1 && tokens[0].1 == "*" {
                terms.push(Term { pos: 0, neg: 0 });
                continue;
            }
            let (mut pos, mut neg) = (0u64, 0u64);
            for (col, tok) in tokens {
                let (positive, digits) = match tok.as_bytes()[0] {
                    b'+' => (true, &tok[1..]),
                    b'-' => (false, &tok[1..]),
                    _ => {
                        return Err(Error::parse(
                            line,
                            col,
                            format!("literal {tok:?} must start with + or -"),
                        ))
                    }
                };
                let v: usize = digits
                    .parse()
                    .map_err(|_| Error::parse(line, col, format!("bad literal {tok:?}")))?;
                if v == 0 || v > n {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("variable {v} outside 1..={n}"),
                    ));
                }
                let bit = var_bit(v);
                if (pos | neg) & bit != 0 {
                    return Err(Error::parse(
                        line,
                        col,
                        format!("variable {v} repeated in one term"),
                    ));
                }
                if positive {
                    pos |= bit;
                } else {
                    neg |= bit;
                }
            }
            terms.push(Term { pos, neg });
        }
        let arity = arity.ok_or_else(|| Error::parse(1, 1, "missing `dnf <arity>` header"))?;
        Dnf::new(arity, terms)
    }
}

pub(crate) fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}
