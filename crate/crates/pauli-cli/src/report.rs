//! The JSON report every subcommand emits, and small helpers shared by the
//! command implementations.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

/// Any failure a command can hit: invalid input, a library error, or I/O.
pub type CliError = Box<dyn std::error::Error>;
pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command computes; the caller wraps it into an
/// [`ExperimentReport`] with timing and version stamps.
pub struct RunResult {
    /// Experiment name, echoed as `report.experiment`.
    pub experiment: &'static str,
    /// Every flag the run was invoked with, defaults included.
    pub params: Map<String, Value>,
    /// Structured numeric results; `pass` must be re-derivable from these.
    pub outputs: Value,
    pub pass: bool,
    pub seed: u64,
}

/// One self-contained record of an experiment run. `pass` is a function of
/// `outputs` and the tolerances recorded in `params` alone, so a report can
/// be re-checked without re-running the experiment.
#[derive(Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub outputs: Value,
    pub pass: bool,
    pub runtime_ms: u64,
    pub seed: u64,
    pub version: String,
}

impl ExperimentReport {
    pub fn from_run(run: RunResult, runtime_ms: u64) -> Self {
        Self {
            experiment: run.experiment.to_string(),
            params: run.params,
            outputs: run.outputs,
            pass: run.pass,
            runtime_ms,
            seed: run.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Builds the `params` map from `(key, value)` pairs. Keys serialize in
/// sorted order, so identical flags give byte-identical JSON.
pub fn params_map(entries: Vec<(&str, Value)>) -> Map<String, Value> {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

/// Writes `content` as `<dir>/<name>`, creating the directory first.
pub fn write_side_file(dir: &Path, name: &str, content: &[u8]) -> CliResult<()> {
    fs::create_dir_all(dir)?;
    let mut file = fs::File::create(dir.join(name))?;
    file.write_all(content)?;
    Ok(())
}
