//! `bsens`: measures, structure checks, witnesses, families, reconstruction and verification suites.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bsens_core::{Error, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "bsens", version, about = "Sensitivity and block sensitivity workbench")]
pub struct Cli {
    /// Largest arity for truth-table operations.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT.n_max)]
    n_max: usize,
    /// Largest arity for exact block sensitivity.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT.bs_max)]
    bs_max: usize,
    /// Largest variable count of an expanded composition.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT.expand_max)]
    expand_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits {
            n_max: self.n_max,
            bs_max: self.bs_max,
            expand_max: self.expand_max,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// s, s0, s1, bs, bs0, bs1 with witnesses, for a `tt` or `dnf` file.
    Measures {
        file: PathBuf,
        /// Also report bs_l for every block size cap l.
        #[arg(long)]
        capped: bool,
    },
    /// Structural statistics of a DNF file, optionally checking properties.
    Props {
        file: PathBuf,
        /// Comma-separated: block, transitive, mixing[=L], tblock=T, compact, normalized, gamma.
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
    },
    /// Constructs a high-sensitivity input for a DNF file.
    Witness {
        file: PathBuf,
        #[arg(long = "proc", value_enum, default_value_t = WitnessProc::Block)]
        procedure: WitnessProc,
        /// Occurrence bound for `tblock`; defaults to the formula's own.
        #[arg(long)]
        t: Option<usize>,
        /// Input for `solve`, as a bit string with x1 first; defaults to all zeros.
        #[arg(long)]
        input: Option<String>,
        /// Blocks for `solve`, e.g. "1,2;3"; defaults to an optimal family at the input.
        #[arg(long)]
        blocks: Option<String>,
        /// Constant for `solve`, an integer or fraction.
        #[arg(long, default_value = "4")]
        c: String,
    },
    /// Generates a separating family instance or a proposition pair.
    Family {
        kind: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Also emit the expanded composed formula.
        #[arg(long)]
        expand: bool,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Completes a ball file to a full table, or cuts a ball out of a `tt` file.
    Reconstruct {
        file: PathBuf,
        /// Sensitivity bound; defaults to half the radius (radius for --monotone).
        #[arg(long)]
        s_bound: Option<usize>,
        #[arg(long)]
        monotone: bool,
        /// With a `tt` file: ball centre as a bit string.
        #[arg(long)]
        center: Option<String>,
        /// With a `tt` file: ball radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Runs a seeded verification suite, or replays a saved counterexample.
    Verify {
        /// Suite name or `all`.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        /// Directory where failing instances are written.
        #[arg(long)]
        save_dir: Option<PathBuf>,
        /// Re-run the suite's checks on a saved instance instead.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessProc {
    Block,
    Onesbound,
    Tblock,
    Mixing,
    Solve,
}

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    CheckFailed(String),
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::CheckFailed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Core(e) => match e {
                Error::Capacity { .. } => 3,
                Error::Inconsistent(_) | Error::SensitivityBoundViolated { .. } => 4,
                Error::PropertyViolation(_)
                | Error::CompactForm(_)
                | Error::Hypothesis(_)
                | Error::NoSolution(_)
                | Error::CompositionRefused(_)
                | Error::Internal(_) => 1,
                _ => 2,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.limits();
    match commands::run(&cli.command, &limits, cli.format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::CheckFailed(out) => print!("{out}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Core(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
