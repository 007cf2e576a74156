//! `gauss-check`: flat-profile verification for the quadratic Gauss
//! states on ℤ/pℤ.

use clap::Args;
use serde_json::json;

use pauli_core::constructions::verify_flat_profiles;

use crate::report::{params_map, CliResult, RunResult};

/// Check that every nonzero Gauss state on ℤ/pℤ has point-basis
/// magnitudes 1 and character-basis magnitudes 1/√p.
#[derive(Debug, Args)]
pub struct GaussCheckArgs {
    /// Comma-separated odd primes p to check.
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    /// Largest allowed deviation of any magnitude from its flat value.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(args: &GaussCheckArgs) -> CliResult<RunResult> {
    let mut per_prime = Vec::with_capacity(args.primes.len());
    let mut worst_delta = 0.0f64;
    let mut worst_char = 0.0f64;
    let mut pass = true;
    for &p in &args.primes {
        let report = verify_flat_profiles(p, args.tol)?;
        worst_delta = worst_delta.max(report.max_dev_delta_basis);
        worst_char = worst_char.max(report.max_dev_char_basis);
        pass &= report.pass;
        per_prime.push(json!({
            "p": p,
            "max_dev_delta_basis": report.max_dev_delta_basis,
            "max_dev_char_basis": report.max_dev_char_basis,
            "pass": report.pass,
        }));
    }
    Ok(RunResult {
        experiment: "gauss-check",
        params: params_map(vec![
            ("primes", json!(args.primes)),
            ("tol", json!(args.tol)),
        ]),
        outputs: json!({
            "per_prime": per_prime,
            "worst_dev_delta_basis": worst_delta,
            "worst_dev_char_basis": worst_char,
        }),
        pass,
        seed: args.seed,
    })
}
