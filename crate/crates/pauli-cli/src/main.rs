//! Seeded command-line experiments for the Pauli state-reconstruction
//! problem.
//!
//! Every subcommand runs one experiment end to end and prints a single
//! JSON report to standard output. Reports follow `report.schema.json`
//! (shipped next to this crate's manifest); their `pass` field is
//! recomputable from the recorded numbers and tolerances alone. Identical
//! flags and `--seed` reproduce identical reports up to `runtime_ms` and
//! `version`.
//!
//! Exit status: `0` when the report passes (informational runs always
//! pass), `1` when it fails, `2` when the experiment could not run.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{ambiguity, conjecture, continuum, gauss, obstruction, orbits, solve};
use report::{CliResult, ExperimentReport, RunResult};

#[derive(Debug, Parser)]
#[command(
    name = "pauli",
    version,
    about = "Seeded magnitude-reconstruction experiments"
)]
struct Cli {
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Write CSV side files into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    csv_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    GaussCheck(gauss::GaussCheckArgs),
    Obstruction(obstruction::ObstructionArgs),
    GaussianOrbits(orbits::OrbitsArgs),
    Continuum(continuum::ContinuumArgs),
    Solve(solve::SolveArgs),
    Ambiguity(ambiguity::AmbiguityArgs),
    Conjecture(conjecture::ConjectureArgs),
}

fn dispatch(cli: &Cli) -> CliResult<RunResult> {
    let csv_dir = cli.csv_dir.as_deref();
    match &cli.command {
        Command::GaussCheck(args) => gauss::run(args),
        Command::Obstruction(args) => obstruction::run(args, csv_dir),
        Command::GaussianOrbits(args) => orbits::run(args, csv_dir),
        Command::Continuum(args) => continuum::run(args, csv_dir),
        Command::Solve(args) => solve::run(args, csv_dir),
        Command::Ambiguity(args) => ambiguity::run(args, csv_dir),
        Command::Conjecture(args) => conjecture::run(args, csv_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let run = match dispatch(&cli) {
        Ok(run) => run,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let runtime_ms = u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX);
    let report = ExperimentReport::from_run(run, runtime_ms);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{json}");
    if let Some(path) = &cli.out {
        if let Err(err) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
