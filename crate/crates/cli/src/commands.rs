use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use bsens_core::bits::{all_vars, format_bits, parse_bits};
use bsens_core::dnf::{bounds_report, check_compact_form, stats};
use bsens_core::families::{proposition_pair, FamilyInstance};
use bsens_core::lowsens::{reconstruct_majority, reconstruct_monotone};
use bsens_core::measures::{block_sensitivity_at, bs_capped};
use bsens_core::verify::{replay, run_suite, SuiteName, VerifyConfig, VerifySuite};
use bsens_core::witness::{
    solve_sensitivity_problem, witness_2mixing_components, witness_onesbound,
    zero_witness_block, zero_witness_tblock, FunctionRef,
};
use bsens_core::{
    block_sensitivity_report, BallValues, BlockFamily, Dnf, FamilyKind, Limits,
    TruthTable,
};

use crate::render;
use crate::{Command, Failure, Format, WitnessProc};

type Outcome = Result<String, Failure>;

enum Loaded {
    Table(TruthTable),
    Dnf(Dnf),
    Ball(BallValues),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = read(path)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    match header.split_whitespace().next() {
        Some("tt") => Ok(Loaded::Table(TruthTable::parse(&text)?)),
        Some("dnf") => Ok(Loaded::Dnf(Dnf::parse(&text)?)),
        Some("ball") => Ok(Loaded::Ball(BallValues::parse(&text)?)),
        _ => Err(Failure::Usage(format!(
            "{}: expected a `tt`, `dnf` or `ball` header",
            path.display()
        ))),
    }
}

fn load_dnf(path: &Path) -> Result<Dnf, Failure> {
    match load(path)? {
        Loaded::Dnf(d) => Ok(d),
        _ => Err(Failure::Usage(format!("{}: expected a dnf file", path.display()))),
    }
}

fn json_line(value: impl Serialize) -> String {
    let mut s = serde_json::to_string(&value).expect("serializable");
    s.push('\n');
    s
}

pub fn run(command: &Command, limits: &Limits, format: Format) -> Outcome {
    match command {
        Command::Measures { file, capped } => measures(file, *capped, limits, format),
        Command::Props { file, check } => props(file, check, limits, format),
        Command::Witness {
            file,
            procedure,
            t,
            input,
            blocks,
            c,
        } => witness(file, *procedure, *t, input.as_deref(), blocks.as_deref(), c, limits, format),
        Command::Family {
            kind,
            n,
            expand,
            p,
            q,
        } => family(kind, *n, *expand, *p, *q, limits, format),
        Command::Reconstruct {
            file,
            s_bound,
            monotone,
            center,
            radius,
        } => reconstruct(file, *s_bound, *monotone, center.as_deref(), *radius, limits),
        Command::Verify {
            suite,
            seed,
            instances,
            max_arity,
            save_dir,
            replay,
        } => verify(
            suite,
            VerifyConfig {
                seed: *seed,
                instances: *instances,
                max_arity: *max_arity,
                limits: *limits,
            },
            save_dir.as_deref(),
            replay.as_deref(),
            format,
        ),
    }
}

fn measures(file: &Path, capped: bool, limits: &Limits, format: Format) -> Outcome {
    let f = match load(file)? {
        Loaded::Table(f) => f,
        Loaded::Dnf(d) => d.to_truth_table(limits)?,
        Loaded::Ball(_) => return Err(Failure::Usage("measures needs a tt or dnf file".into())),
    };
    let report = block_sensitivity_report(&f, limits)?;
    let caps: Vec<usize> = if capped && report.block.is_some() {
        (1..=f.arity()).map(|l| bs_capped(&f, l, limits)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    Ok(match format {
        Format::Text => {
            let mut out = render::measures(&report);
            if !caps.is_empty() {
                let parts: Vec<String> = caps.iter().enumerate().map(|(l, b)| format!("{}:{b}", l + 1)).collect();
                writeln!(out, "bs_l {}", parts.join(" ")).unwrap();
            }
            out
        }
        Format::JsonLines => json_line(json!({ "report": report, "bs_capped": caps })),
    })
}

enum PropCheck {
    Block,
    Transitive,
    Mixing(usize),
    TBlock(usize),
    Compact,
    Normalized,
    Gamma,
}

impl FromStr for PropCheck {
    type Err = Failure;

    fn from_str(s: &str) -> Result<Self, Failure> {
        let (name, arg) = match s.split_once('=') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let number = |default: Option<usize>| -> Result<usize, Failure> {
            match arg {
                Some(a) => a
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad number in check {s:?}"))),
                None => default.ok_or_else(|| Failure::Usage(format!("check {name:?} needs =<number>"))),
            }
        };
        match name.trim() {
            "block" => Ok(PropCheck::Block),
            "transitive" => Ok(PropCheck::Transitive),
            "mixing" => Ok(PropCheck::Mixing(number(Some(2))?)),
            "tblock" => Ok(PropCheck::TBlock(number(None)?)),
            "compact" => Ok(PropCheck::Compact),
            "normalized" => Ok(PropCheck::Normalized),
            "gamma" => Ok(PropCheck::Gamma),
            other => Err(Failure::Usage(format!("unknown property {other:?}"))),
        }
    }
}

fn props(file: &Path, checks: &[String], limits: &Limits, format: Format) -> Outcome {
    let d = load_dnf(file)?;
    let checks: Vec<PropCheck> = checks.iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
    let st = stats(&d);
    let needs_table = checks
        .iter()
        .any(|c| matches!(c, PropCheck::Compact | PropCheck::Normalized | PropCheck::Gamma));
    let compact = if needs_table || limits.check_bs("props", d.arity()).is_ok() {
        Some(check_compact_form(&d, limits)?)
    } else {
        None
    };
    let mut results = Vec::new();
    for check in &checks {
        let (name, ok) = match check {
            PropCheck::Block => ("block".to_string(), st.block),
            PropCheck::Transitive => ("transitive".to_string(), st.transitive),
            PropCheck::Mixing(l) => (format!("mixing>={l}"), st.mixing_max.at_least(*l)),
            PropCheck::TBlock(t) => (format!("tblock={t}"), st.t_min <= *t),
            PropCheck::Compact => ("compact".to_string(), compact.as_ref().is_some_and(|c| c.is_compact())),
            PropCheck::Normalized => (
                "normalized".to_string(),
                compact.as_ref().is_some_and(|c| c.is_normalized_compact()),
            ),
            PropCheck::Gamma => {
                let f = d.to_truth_table(limits)?;
                ("gamma".to_string(), bounds_report(&d, &f, limits)?.holds())
            }
        };
        results.push((name, ok));
    }
    let out = match format {
        Format::Text => {
            let mut out = render::stats(&st);
            if let Some(c) = &compact {
                out.push_str(&render::compact(c));
            }
            for (name, ok) in &results {
                writeln!(out, "check {name}: {}", if *ok { "pass" } else { "FAIL" }).unwrap();
            }
            out
        }
        Format::JsonLines => {
            let checks: Vec<_> = results.iter().map(|(n, ok)| json!({ "check": n, "passed": ok })).collect();
            json_line(json!({ "stats": st, "compact": compact, "checks": checks }))
        }
    };
    if results.iter().all(|(_, ok)| *ok) {
        Ok(out)
    } else {
        Err(Failure::CheckFailed(out))
    }
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, Failure> {
    let bad = || Failure::Usage(format!("bad constant {s:?}; expected an integer or p/q"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (u64, u64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => Ok(Ratio::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_blocks(s: &str, arity: usize) -> Result<BlockFamily, Failure> {
    let blocks: Vec<Vec<usize>> = s
        .split(';')
        .filter(|b| !b.trim().is_empty())
        .map(|b| {
            b.split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad variable {v:?} in blocks"))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
    Ok(BlockFamily::from_vars(arity, &refs)?)
}

#[allow(clippy::too_many_arguments)]
fn witness(
    file: &Path,
    procedure: WitnessProc,
    t: Option<usize>,
    input: Option<&str>,
    blocks: Option<&str>,
    c: &str,
    limits: &Limits,
    format: Format,
) -> Outcome {
    let d = load_dnf(file)?;
    let n = d.arity();
    let result = match procedure {
        WitnessProc::Block => zero_witness_block(&d)?,
        WitnessProc::Onesbound => witness_onesbound(&d)?,
        WitnessProc::Tblock => zero_witness_tblock(&d, t.unwrap_or(stats(&d).t_min))?,
        WitnessProc::Mixing => witness_2mixing_components(&d)?,
        WitnessProc::Solve => {
            let x = match input {
                Some(bits) => parse_bits(bits, n)?,
                None => 0,
            };
            let blocks = match blocks {
                Some(text) => parse_blocks(text, n)?,
                None => block_sensitivity_at(&d.to_truth_table(limits)?, x, limits)?.1,
            };
            let solution = solve_sensitivity_problem(FunctionRef::Dnf(&d), x, &blocks, parse_ratio(c)?, limits)?;
            return Ok(match format {
                Format::Text => render::solution(&solution, x, &blocks, n),
                Format::JsonLines => json_line(json!({
                    "x": format_bits(x, n),
                    "blocks": blocks,
                    "y": format_bits(solution.y, n),
                    "solution": solution,
                })),
            });
        }
    };
    let out = match format {
        Format::Text => render::witness(&result),
        Format::JsonLines => json_line(json!({ "bits": format_bits(result.input, n), "witness": result })),
    };
    if result.meets_bound() {
        Ok(out)
    } else {
        Err(Failure::CheckFailed(out))
    }
}

fn family(kind: &str, n: usize, expand: bool, p: usize, q: usize, limits: &Limits, format: Format) -> Outcome {
    if kind == "pair" {
        let pair = proposition_pair(p, q)?;
        let arity = p + q;
        return Ok(match format {
            Format::Text => format!(
                "# a = {}, centre {}\n# f\n{}# g\n{}",
                format_bits(pair.a, arity),
                format_bits(pair.center(), arity),
                pair.f.to_file_string(),
                pair.g.to_file_string()
            ),
            Format::JsonLines => json_line(json!({
                "p": p,
                "q": q,
                "a": format_bits(pair.a, arity),
                "center": format_bits(pair.center(), arity),
                "f": pair.f.to_file_string(),
                "g": pair.g.to_file_string(),
            })),
        });
    }
    let kind: FamilyKind = kind.parse().map_err(|e: bsens_core::Error| Failure::Usage(e.to_string()))?;
    let inst = FamilyInstance::build(kind, n, limits)?;
    if expand && inst.expanded_dnf.is_none() {
        return Err(Failure::Core(bsens_core::Error::Capacity {
            what: "family expansion",
            arity: inst.copies * inst.g_dnf.arity(),
            limit: limits.expand_max,
        }));
    }
    Ok(match format {
        Format::Text => {
            let mut out = format!("# {} inner function, {} copies\n", inst.name, inst.copies);
            out.push_str(&inst.g_dnf.to_file_string());
            let (s, bs) = kind.closed_form(n);
            writeln!(out, "# predicted for the composition (closed form s = {s}, bs = {bs})").unwrap();
            for line in render::measures(&inst.predicted).lines() {
                writeln!(out, "# {line}").unwrap();
            }
            if expand {
                writeln!(out, "# expanded").unwrap();
                out.push_str(&inst.expanded_dnf.as_ref().expect("checked above").to_file_string());
            }
            out
        }
        Format::JsonLines => json_line(json!({
            "name": inst.name,
            "copies": inst.copies,
            "g": inst.g_dnf.to_file_string(),
            "g_report": inst.g_report,
            "predicted": inst.predicted,
            "expanded": if expand { inst.expanded_dnf.as_ref().map(Dnf::to_file_string) } else { None },
        })),
    })
}

fn reconstruct(
    file: &Path,
    s_bound: Option<usize>,
    monotone: bool,
    center: Option<&str>,
    radius: Option<usize>,
    limits: &Limits,
) -> Outcome {
    match load(file)? {
        Loaded::Ball(ball) => {
            let bound = s_bound.unwrap_or(if monotone { ball.radius() } else { ball.radius() / 2 });
            let f = if monotone {
                reconstruct_monotone(&ball, bound, limits)?
            } else {
                reconstruct_majority(&ball, bound, limits)?
            };
            Ok(f.to_file_string())
        }
        Loaded::Table(f) => {
            let n = f.arity();
            let center = match center {
                Some(bits) => parse_bits(bits, n)?,
                None => 0,
            };
            let radius = radius.ok_or_else(|| Failure::Usage("cutting a ball needs --radius".into()))?;
            Ok(BallValues::from_table(&f, center & all_vars(n), radius)?.to_file_string())
        }
        Loaded::Dnf(_) => Err(Failure::Usage("reconstruct needs a ball or tt file".into())),
    }
}

fn verify(
    suite: &str,
    config: VerifyConfig,
    save_dir: Option<&Path>,
    replay_file: Option<&Path>,
    format: Format,
) -> Outcome {
    let parse = |s: &str| s.parse::<SuiteName>().map_err(|e| Failure::Usage(e.to_string()));
    if let Some(path) = replay_file {
        let suite = parse(suite)?;
        let checks = replay(suite, &read(path)?, &config.limits)?;
        let passed = checks.passed();
        let checks = checks.into_vec();
        let out = match format {
            Format::Text => render::checks(&checks),
            Format::JsonLines => json_line(json!({ "suite": suite, "passed": passed, "checks": checks })),
        };
        return if passed { Ok(out) } else { Err(Failure::CheckFailed(out)) };
    }
    let suites: Vec<SuiteName> = if suite == "all" {
        SuiteName::ALL.to_vec()
    } else {
        vec![parse(suite)?]
    };
    let mut out = String::new();
    let mut passed = true;
    for name in suites {
        let report = run_suite(name, &config);
        passed &= report.passed();
        if let Some(dir) = save_dir {
            save_failures(&report, dir)?;
        }
        out.push_str(&match format {
            Format::Text => render::suite(&report),
            Format::JsonLines => {
                let mut s = String::new();
                for inst in &report.instances {
                    s.push_str(&json_line(json!({ "suite": name, "instance": inst })));
                }
                s.push_str(&json_line(json!({
                    "suite": name,
                    "seed": report.seed,
                    "instances": report.instances.len(),
                    "failures": report.failures().count(),
                    "passed": report.passed(),
                })));
                s
            }
        });
    }
    if passed {
        Ok(out)
    } else {
        Err(Failure::CheckFailed(out))
    }
}

fn save_failures(report: &VerifySuite, dir: &Path) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for inst in report.failures() {
        let ext = if inst.instance.starts_with("dnf") { "dnf" } else { "tt" };
        let path = dir.join(format!("{}-{}-{}.{ext}", report.suite, report.seed, inst.id));
        fs::write(path, &inst.instance).map_err(io)?;
    }
    Ok(())
}
