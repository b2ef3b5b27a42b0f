//! Command-line front end: parse a config, run the requested stage and
//! write CSV artifacts plus a summary.

pub mod config;
pub mod error;
pub mod experiment;
pub mod run;

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

pub use config::RawConfig;
pub use error::CliError;
pub use experiment::{Experiment, Mode};
pub use run::{execute, Outcome};

/// Overrides `[output] dir` when `--out` is absent.
pub const OUT_DIR_ENV: &str = "SUBDIFF_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "subdiff", version, about = "Subdiffusion experiments with general memory kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Experiment config (flat `key = value` sections).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for the randomized inequality checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Certify the kernel hypotheses and sampled inequalities.
    Certify,
    /// Solve the problem block for every kernel.
    Solve,
    /// Weak Harnack ratios on the configured cylinders.
    Harnack,
    /// Oscillation decay over nested cylinders.
    Hoelder,
    /// Harnack ratios with one solve per cylinder radius.
    Sweep,
    /// Compare against the Mittag-Leffler solution.
    Benchmark,
    /// List kernel families and presets.
    Presets,
    /// Run the mode named in the config (default: the full pipeline).
    Run,
}

impl Command {
    fn mode(self) -> Option<Mode> {
        Some(match self {
            Self::Certify => Mode::Certify,
            Self::Solve => Mode::Solve,
            Self::Harnack => Mode::Harnack,
            Self::Hoelder => Mode::Hoelder,
            Self::Sweep => Mode::Sweep,
            Self::Benchmark => Mode::Benchmark,
            Self::Presets | Self::Run => return None,
        })
    }
}

pub fn presets_text() -> String {
    let mut s = String::new();
    for (kind, text) in subdiff::presets::listing() {
        s.push_str(&format!("{kind:<8}{text}\n"));
    }
    s
}

/// Parses, applies CLI overrides and validates.
pub fn load_experiment(path: &std::path::Path, command: Command, seed: Option<u64>) -> Result<Experiment, CliError> {
    let raw = RawConfig::load(path)?;
    let mut exp = Experiment::from_raw(&raw)?;
    if let Some(m) = command.mode() {
        exp.mode = m;
    }
    if let Some(s) = seed {
        exp.seed = s;
    }
    Ok(exp)
}

fn run_inner(cli: Cli) -> Result<Outcome, CliError> {
    if let Some(n) = cli.common.threads {
        if n == 0 {
            return Err(CliError::parse(0, Some("--threads"), "must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    }
    if let Command::Presets = cli.command {
        return Ok(Outcome {
            summary: presets_text(),
            ..Outcome::default()
        });
    }
    let path = cli
        .common
        .config
        .ok_or_else(|| CliError::parse(0, Some("--config"), "this command needs a config file"))?;
    let exp = load_experiment(&path, cli.command, cli.common.seed)?;
    let out = execute(&exp)?;
    let dir = cli
        .common
        .out
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .or_else(|| exp.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    out.write_to(&dir)?;
    Ok(out)
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let presets = matches!(cli.command, Command::Presets);
    match run_inner(cli) {
        Ok(out) => {
            print!("{}", out.summary);
            if out.passed() {
                0
            } else {
                for f in &out.failures {
                    eprintln!("check failed: {f}");
                }
                if presets { 0 } else { 3 }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
