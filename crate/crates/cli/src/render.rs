//! Text renderings.

use std::fmt::Write as _;

use bsens_core::bits::format_bits;
use bsens_core::verify::{Check, VerifySuite};
use bsens_core::witness::Solution;
use bsens_core::{BlockFamily, CompactFormReport, DnfStats, MeasureReport, WitnessResult};

fn bits(x: Option<u64>, n: usize) -> String {
    x.map(|x| format_bits(x, n)).unwrap_or_else(|| "-".into())
}

pub fn measures(r: &MeasureReport) -> String {
    let n = r.arity;
    let mut out = String::new();
    writeln!(out, "arity {n}").unwrap();
    writeln!(out, "s {}  s0 {}  s1 {}", r.s(), r.s0, r.s1).unwrap();
    if r.witness_s0.is_some() || r.witness_s1.is_some() {
        writeln!(out, "witness s0 {}  s1 {}", bits(r.witness_s0, n), bits(r.witness_s1, n)).unwrap();
    }
    if let Some(b) = &r.block {
        writeln!(out, "bs {}  bs0 {}  bs1 {}", b.bs0.max(b.bs1), b.bs0, b.bs1).unwrap();
        for (side, w) in [("bs0", &b.witness_bs0), ("bs1", &b.witness_bs1)] {
            if let Some(w) = w {
                writeln!(out, "witness {side} {} blocks {}", format_bits(w.input, n), w.blocks).unwrap();
            }
        }
    }
    out
}

pub fn stats(st: &DnfStats) -> String {
    let mut out = String::new();
    writeln!(out, "size {}  width {}", st.size, st.width).unwrap();
    writeln!(out, "block {}  transitive {}  mixing_max {}  t {}", st.block, st.transitive, st.mixing_max, st.t_min).unwrap();
    writeln!(out, "gamma {}  per term {:?}", st.gamma, st.gamma_per_term).unwrap();
    out
}

pub fn compact(c: &CompactFormReport) -> String {
    let mut out = format!(
        "compact {}  normalized {}  bs0 {}  bs {}  bs(f, 0) {}\n",
        c.is_compact(),
        c.is_normalized_compact(),
        c.bs0,
        c.bs,
        c.bs_at_zero
    );
    for f in c.failures() {
        writeln!(out, "  {f}").unwrap();
    }
    out
}

pub fn witness(w: &WitnessResult) -> String {
    format!(
        "input {}\nside {}\nguaranteed {}\nmeasured {}\nprocedure {}\n",
        format_bits(w.input, w.arity),
        w.side,
        w.guaranteed_bound,
        w.measured,
        w.procedure
    )
}

pub fn solution(s: &Solution, x: u64, blocks: &BlockFamily, n: usize) -> String {
    let mut out = format!(
        "x {}  blocks {}  sensitive blocks {}\ny {}\nsensitivity {}\nprocedure {}\n",
        format_bits(x, n),
        blocks,
        s.block_count,
        format_bits(s.y, n),
        s.sensitivity,
        s.procedure
    );
    if let Some(w) = &s.warning {
        writeln!(out, "warning {w}").unwrap();
    }
    out
}

pub fn checks(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail))
        .collect()
}

pub fn suite(report: &VerifySuite) -> String {
    let mut out = String::new();
    for inst in report.failures() {
        writeln!(out, "FAIL {} #{} ({})", report.suite, inst.id, inst.description).unwrap();
        if let Some(e) = &inst.error {
            writeln!(out, "  error: {e}").unwrap();
        }
        for c in inst.failed_checks() {
            writeln!(out, "  {}: {}", c.name, c.detail).unwrap();
        }
        for line in inst.instance.lines() {
            writeln!(out, "  | {line}").unwrap();
        }
    }
    let failed = report.failures().count();
    writeln!(
        out,
        "{} seed {}: {}/{} instances passed{}",
        report.suite,
        report.seed,
        report.instances.len() - failed,
        report.instances.len(),
        if failed == 0 { "" } else { ", FAILED" }
    )
    .unwrap();
    out
}
