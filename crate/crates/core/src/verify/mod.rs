//! Seeded randomized suites that check the known inequalities on generated instances.
//!
//! Every instance draws from its own ChaCha stream (`seed`, instance id), so a
//! report is reproducible from the seed alone and independent of scheduling.
//! Failed instances carry the offending formula or table in its file format;
//! [`replay`] re-runs the suite's checks on such a file.

mod checks;
pub mod generate;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::table::TruthTable;

pub use checks::{
    check_block_4s2, check_families, check_gamma, check_hypercube, check_kenyon_kutin,
    check_majority_reconstruction, check_mixing, check_monotone_reconstruction, check_nisan,
    check_pair_uniqueness, check_senslower, check_tblock, check_xor, pointwise_gaps,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn new() -> Self {
        Checks(Vec::new())
    }

    pub fn holds(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn le(&mut self, name: impl Into<String>, lhs: usize, rhs: usize) {
        self.holds(name, lhs <= rhs, format!("{lhs} <= {rhs}"));
    }

    pub fn eq(&mut self, name: impl Into<String>, lhs: usize, rhs: usize) {
        self.holds(name, lhs == rhs, format!("{lhs} = {rhs}"));
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }

    pub fn passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }

    pub fn into_vec(self) -> Vec<Check> {
        self.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub id: usize,
    pub description: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// The instance in its file format; reported for failures.
    pub instance: String,
    pub error: Option<String>,
}

impl InstanceResult {
    fn new(id: usize, description: String, instance: String, outcome: Result<Checks>) -> Self {
        match outcome {
            Ok(checks) => InstanceResult {
                id,
                description,
                passed: checks.passed(),
                checks: checks.into_vec(),
                instance,
                error: None,
            },
            Err(e) => InstanceResult {
                id,
                description,
                passed: false,
                checks: Vec::new(),
                instance,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    GammaBounds,
    Block4s2,
    Tblock,
    KenyonKutin,
    #[serde(rename = "mixing-AS")]
    MixingAs,
    Families,
    Reconstruction,
    MonotoneNisan,
    Hypercube,
    Senslower,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::GammaBounds,
        SuiteName::Block4s2,
        SuiteName::Tblock,
        SuiteName::KenyonKutin,
        SuiteName::MixingAs,
        SuiteName::Families,
        SuiteName::Reconstruction,
        SuiteName::MonotoneNisan,
        SuiteName::Hypercube,
        SuiteName::Senslower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::GammaBounds => "gamma-bounds",
            SuiteName::Block4s2 => "block-4s2",
            SuiteName::Tblock => "tblock",
            SuiteName::KenyonKutin => "kenyon-kutin",
            SuiteName::MixingAs => "mixing-AS",
            SuiteName::Families => "families",
            SuiteName::Reconstruction => "reconstruction",
            SuiteName::MonotoneNisan => "monotone-nisan",
            SuiteName::Hypercube => "hypercube",
            SuiteName::Senslower => "senslower",
        }
    }

    /// Random instances per run unless overridden.
    pub fn default_instances(self) -> usize {
        match self {
            SuiteName::Block4s2 | SuiteName::Senslower => 200,
            SuiteName::GammaBounds | SuiteName::Tblock | SuiteName::KenyonKutin => 100,
            SuiteName::MixingAs | SuiteName::Reconstruction => 100,
            SuiteName::MonotoneNisan | SuiteName::Hypercube => 50,
            SuiteName::Families => 0,
        }
    }

    /// Largest arity of generated instances unless overridden.
    pub fn default_max_arity(self) -> usize {
        match self {
            SuiteName::KenyonKutin | SuiteName::Reconstruction | SuiteName::MonotoneNisan => 10,
            _ => 12,
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<_> = SuiteName::ALL.iter().map(|k| k.name()).collect();
                Error::OutOfRange(format!("unknown suite {s:?}; known: {}", known.join(", ")))
            })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub instances: Option<usize>,
    pub max_arity: Option<usize>,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            instances: None,
            max_arity: None,
            limits: Limits::DEFAULT,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySuite {
    pub suite: SuiteName,
    pub seed: u64,
    pub instances: Vec<InstanceResult>,
}

impl VerifySuite {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.passed)
    }
}

fn rng_for(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// A generated instance: description, file text, and the outcome of its checks.
type Outcome = (String, String, Result<Checks>);

fn dnf_outcome(d: Result<Dnf>, check: impl FnOnce(&Dnf) -> Result<Checks>) -> Outcome {
    match d {
        Ok(d) => {
            let description = format!("{} vars, {} terms", d.arity(), d.size());
            let outcome = check(&d);
            (description, d.to_file_string(), outcome)
        }
        Err(e) => ("generation".into(), String::new(), Err(e)),
    }
}

fn table_outcome(f: &TruthTable, check: impl FnOnce(&TruthTable) -> Result<Checks>) -> Outcome {
    (format!("{} vars", f.arity()), f.to_file_string(), check(f))
}

pub fn run_suite(suite: SuiteName, config: &VerifyConfig) -> VerifySuite {
    let count = config.instances.unwrap_or(suite.default_instances());
    let max_arity = config.max_arity.unwrap_or(suite.default_max_arity());
    let limits = &config.limits;
    let seed = config.seed;
    let instances: Vec<InstanceResult> = match suite {
        SuiteName::Families => checks::family_instances(limits)
            .into_par_iter()
            .enumerate()
            .map(|(id, (description, instance, outcome))| {
                InstanceResult::new(id, description, instance, outcome)
            })
            .collect(),
        _ => {
            let fixed = fixed_instances(suite, limits);
            let offset = fixed.len();
            let mut out: Vec<InstanceResult> = fixed
                .into_iter()
                .enumerate()
                .map(|(id, (d, i, o))| InstanceResult::new(id, d, i, o))
                .collect();
            let random: Vec<InstanceResult> = (0..count)
                .into_par_iter()
                .map(|k| {
                    let id = offset + k;
                    let (description, instance, outcome) =
                        random_instance(suite, k, &mut rng_for(seed, k), max_arity, limits);
                    InstanceResult::new(id, description, instance, outcome)
                })
                .collect();
            out.extend(random);
            out
        }
    };
    VerifySuite {
        suite,
        seed,
        instances,
    }
}

fn fixed_instances(suite: SuiteName, limits: &Limits) -> Vec<Outcome> {
    use crate::families::{ambainis_sun_dnf, rubinstein_dnf};
    match suite {
        SuiteName::Hypercube => [rubinstein_dnf(2), ambainis_sun_dnf(1)]
            .iter()
            .map(|d| match d.to_truth_table(limits) {
                Ok(g) => table_outcome(&g, |g| check_hypercube(g, limits)),
                Err(e) => ("inner function".into(), d.to_file_string(), Err(e)),
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn random_instance(
    suite: SuiteName,
    k: usize,
    rng: &mut ChaCha8Rng,
    max_arity: usize,
    limits: &Limits,
) -> Outcome {
    use generate::*;
    match suite {
        SuiteName::Block4s2 => {
            dnf_outcome(block_dnf(rng, max_arity, limits), |d| check_block_4s2(d, limits))
        }
        SuiteName::Tblock => {
            let t = 2 + k % 2;
            dnf_outcome(tblock_dnf(rng, t, max_arity, limits), |d| {
                check_tblock(d, limits)
            })
        }
        SuiteName::GammaBounds => {
            dnf_outcome(compact_dnf(rng, max_arity, limits), |d| check_gamma(d, limits))
        }
        SuiteName::MixingAs => {
            dnf_outcome(mixing_dnf(rng, max_arity, limits), |d| check_mixing(d, limits))
        }
        SuiteName::Senslower => {
            dnf_outcome(block_dnf(rng, max_arity, limits), |d| check_senslower(d, limits))
        }
        SuiteName::KenyonKutin => {
            let f = low_sensitivity_table(rng, max_arity);
            table_outcome(&f, |f| check_kenyon_kutin(f, limits))
        }
        SuiteName::MonotoneNisan => {
            let f = monotone_table(rng, max_arity);
            table_outcome(&f, |f| check_nisan(f, limits))
        }
        SuiteName::Hypercube => {
            let g = s0_one_table(rng, max_arity);
            table_outcome(&g, |g| check_hypercube(g, limits))
        }
        SuiteName::Reconstruction => match k % 3 {
            0 => {
                let f = low_sensitivity_table(rng, max_arity);
                table_outcome(&f, |f| check_majority_reconstruction(f, limits))
            }
            1 => {
                let f = monotone_table(rng, max_arity);
                table_outcome(&f, |f| check_monotone_reconstruction(f, limits))
            }
            _ => {
                let f = low_sensitivity_table(rng, max_arity);
                let g = if rand::Rng::gen_bool(rng, 0.5) {
                    let mut g = f.clone();
                    let x = rand::Rng::gen_range(rng, 0..f.len());
                    g.set(x, !g.get(x));
                    g
                } else {
                    let h = low_sensitivity_table(rng, f.arity());
                    TruthTable::from_fn(f.arity(), |x| h.get(x & crate::bits::all_vars(h.arity())))
                };
                let text = format!("{}{}", f.to_file_string(), g.to_file_string());
                let outcome = check_xor(&f, &g, limits).and_then(|mut c| {
                    c.extend(check_pair_uniqueness(&f, &g, limits)?);
                    Ok(c)
                });
                (format!("pair on {} vars", f.arity()), text, outcome)
            }
        },
        SuiteName::Families => unreachable!("families has no random instances"),
    }
}

/// Splits text holding one or more concatenated `tt` files.
fn split_tables(text: &str) -> Result<Vec<TruthTable>> {
    let mut chunks: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with("tt") || chunks.is_empty() {
            chunks.push(String::new());
        }
        let last = chunks.last_mut().expect("pushed above");
        last.push_str(line);
        last.push('\n');
    }
    chunks.iter().map(|c| TruthTable::parse(c)).collect()
}

/// Re-runs the checks of `suite` on an instance saved from a failure report.
pub fn replay(suite: SuiteName, text: &str, limits: &Limits) -> Result<Checks> {
    match suite {
        SuiteName::Block4s2 => check_block_4s2(&Dnf::parse(text)?, limits),
        SuiteName::Tblock => check_tblock(&Dnf::parse(text)?, limits),
        SuiteName::GammaBounds => check_gamma(&Dnf::parse(text)?, limits),
        SuiteName::MixingAs => check_mixing(&Dnf::parse(text)?, limits),
        SuiteName::Senslower => check_senslower(&Dnf::parse(text)?, limits),
        SuiteName::KenyonKutin => check_kenyon_kutin(&TruthTable::parse(text)?, limits),
        SuiteName::MonotoneNisan => check_nisan(&TruthTable::parse(text)?, limits),
        SuiteName::Hypercube => check_hypercube(&TruthTable::parse(text)?, limits),
        SuiteName::Reconstruction => match split_tables(text)?.as_slice() {
            [f] if crate::table::is_monotone(f, limits)? => {
                let mut c = check_majority_reconstruction(f, limits)?;
                c.extend(check_monotone_reconstruction(f, limits)?);
                Ok(c)
            }
            [f] => check_majority_reconstruction(f, limits),
            [f, g] => {
                let mut c = check_xor(f, g, limits)?;
                c.extend(check_pair_uniqueness(f, g, limits)?);
                Ok(c)
            }
            _ => Err(Error::parse(1, 1, "expected one or two truth tables")),
        },
        SuiteName::Families => check_families(text, limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: SuiteName) -> VerifySuite {
        let config = VerifyConfig {
            seed: 1,
            instances: Some(6),
            max_arity: Some(8),
            limits: Limits::DEFAULT,
        };
        run_suite(suite, &config)
    }

    #[test]
    fn every_suite_passes_a_small_run() {
        for suite in SuiteName::ALL {
            if suite == SuiteName::Families {
                continue;
            }
            let report = quick(suite);
            if let Some(f) = report.failures().next() {
                panic!("{suite} instance {}: {:?} {:?}\n{}", f.id, f.error, f.checks, f.instance);
            }
            assert!(!report.instances.is_empty());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = quick(SuiteName::Block4s2);
        let b = quick(SuiteName::Block4s2);
        let texts = |s: &VerifySuite| s.instances.iter().map(|i| i.instance.clone()).collect::<Vec<_>>();
        assert_eq!(texts(&a), texts(&b));
    }

    #[test]
    fn saved_instances_replay_to_the_same_checks() {
        for suite in SuiteName::ALL {
            let report = quick(suite);
            for inst in &report.instances {
                if suite == SuiteName::Families && inst.instance.starts_with("tt") {
                    continue;
                }
                let replayed = replay(suite, &inst.instance, &Limits::DEFAULT).unwrap().into_vec();
                for c in &inst.checks {
                    assert!(replayed.contains(c), "{suite} #{}: {c:?} not reproduced", inst.id);
                }
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteName::ALL {
            assert_eq!(s.name().parse::<SuiteName>().unwrap(), s);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn replay_flags_a_broken_instance() {
        // x1 is positive in both terms
        let text = "dnf 2\n+1\n+1 +2\n";
        let checks = replay(SuiteName::Block4s2, text, &Limits::DEFAULT);
        assert!(checks.map(|c| !c.passed()).unwrap_or(true));
    }
}
