//! `dezin`: identity suites and spectral experiments from a JSON config.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on a configuration or usage error.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ExperimentConfig;
use error::{CliError, EXIT_CHECK};
use output::Format;

#[derive(Parser)]
#[command(name = "dezin", version, about = "Identity suites and spectral experiments on the lattice model")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config document. Missing fields take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (default: stdout). Overrides the config's `out`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overrides the config's `format`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Overrides the config's `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Run the identity suites and report the largest residual of each.
    Verify,
    /// Lowest eigenvalues of the truncated operator.
    Spectrum,
    /// Eigenvalues across a sweep of flux values p/q.
    Butterfly,
    /// Semiboundedness estimate and optional kernel check.
    Semibound,
    /// Write the truncated matrix.
    Assemble,
}

fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let outcome = match cli.command {
        Command::Verify => commands::verify(&cfg, format),
        Command::Spectrum => commands::spectrum(&cfg, format),
        Command::Butterfly => commands::butterfly(&cfg, format),
        Command::Semibound => commands::semibound(&cfg, format),
        Command::Assemble => commands::assemble_cmd(&cfg, format),
    }?;
    output::emit(&outcome.text, cli.out.as_deref().or(cfg.out.as_deref()))?;
    Ok(outcome)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DEZIN_LOG", "off")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
