//! `gaussian-orbits`: closed-form solution of the two-profile problem in
//! the Gaussian class, with every sign representative verified.

use std::fmt::Write as _;
use std::path::Path;

use clap::Args;
use serde_json::json;

use pauli_core::gaussian::{check_gaussian_solution, solve_gaussian_pauli, GaussianMagnitudeData};

use crate::report::{params_map, write_side_file, CliResult, RunResult};

/// Enumerate and verify the `2^k` sign representatives solving the
/// Gaussian magnitude data `μ` (and optional intensity ratio `b`).
#[derive(Debug, Args)]
pub struct OrbitsArgs {
    /// Comma-separated magnitude ratios μ_j ∈ (0, 1].
    #[arg(long, value_delimiter = ',', required = true)]
    pub mu: Vec<f64>,
    /// Intensity ratio b; defaults to Π μ_j.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Largest allowed verification deviation per representative.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(args: &OrbitsArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(format!("tolerance must be positive and finite, got {}", args.tol).into());
    }
    let mut data = GaussianMagnitudeData::new(args.mu.clone())?;
    if let Some(scale) = args.scale {
        data = data.with_scale(scale)?;
    }
    let orbits = solve_gaussian_pauli(&data)?;

    let mut reps = Vec::with_capacity(orbits.representatives.len());
    let mut pass = true;
    for i in 0..orbits.representatives.len() {
        let check = check_gaussian_solution(&orbits.representative_matrix(i), &data)?;
        let verified = check.matrix_dev <= args.tol && check.amplitude_dev <= args.tol;
        pass &= verified;
        reps.push(json!({
            "signs": orbits.sign_patterns[i],
            "diagonal": orbits.representatives[i],
            "matrix_dev": check.matrix_dev,
            "amplitude_dev": check.amplitude_dev,
            "verified": verified,
        }));
    }
    let blocks: Vec<_> = orbits
        .blocks
        .iter()
        .map(|b| {
            json!({
                "indices": b.indices,
                "mu": b.mu,
                "lambda": b.lambda,
                "rotation_group_dim": b.group_dim,
            })
        })
        .collect();

    if let Some(dir) = csv_dir {
        let mut csv = String::from("representative,index,sign,diagonal\n");
        for (i, (signs, diag)) in orbits
            .sign_patterns
            .iter()
            .zip(&orbits.representatives)
            .enumerate()
        {
            for (j, (s, d)) in signs.iter().zip(diag).enumerate() {
                writeln!(csv, "{i},{j},{s},{d}")?;
            }
        }
        write_side_file(dir, "representatives.csv", csv.as_bytes())?;
    }

    Ok(RunResult {
        experiment: "gaussian-orbits",
        params: params_map(vec![
            ("mu", json!(args.mu)),
            ("scale", json!(args.scale)),
            ("tol", json!(args.tol)),
        ]),
        outputs: json!({
            "mu": orbits.mu,
            "lambda": orbits.lambda,
            "scale": data.scale(),
            "representative_count": orbits.representatives.len(),
            "representatives": reps,
            "blocks": blocks,
            "orbit_is_point": orbits.orbit_is_point,
            // Repeated μ values leave a continuous rotation acting on each
            // representative, so the listed solutions are orbit base points,
            // not the whole solution set.
            "continuous_orbits": !orbits.orbit_is_point,
        }),
        pass,
        seed: args.seed,
    })
}
