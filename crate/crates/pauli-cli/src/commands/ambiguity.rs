//! `ambiguity`: search for distinct states sharing one magnitude profile,
//! either by planting random states or by probing the flat two-frame
//! profile that the quadratic Gauss states share.

use std::fmt::Write as _;
use std::path::Path;

use clap::Args;
use serde_json::json;

use pauli_core::measurement::{is_member, FrameSet, MagnitudeProfile};
use pauli_core::solvers::{ambiguity_search, certify_witness, reconstruct, SolverConfig};
use pauli_core::statespace::{projective_distance, StateVector};

use crate::commands::{build_frames, state_json};
use crate::report::{params_map, write_side_file, CliResult, RunResult};

/// Search for magnitude-profile ambiguities with seeded random restarts.
#[derive(Debug, Args)]
pub struct AmbiguityArgs {
    /// Hilbert-space dimension.
    #[arg(long, default_value_t = 7)]
    pub dim: usize,
    /// Comma-separated frame names: standard, character.
    #[arg(long, value_delimiter = ',', default_value = "standard,character")]
    pub frames: Vec<String>,
    /// Random plants to probe, or member-collection runs with --flat.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Probe the flat profile (point magnitudes 1, character magnitudes
    /// 1/√dim) instead of planting random states.
    #[arg(long)]
    pub flat: bool,
    /// Smallest member count for a passing --flat run.
    #[arg(long, default_value_t = 2)]
    pub min_members: usize,
    /// Projection sweeps per restart.
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    /// Residual threshold declaring convergence.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Independent random restarts per reconstruction.
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    /// Projective distance under which two states count as the same ray.
    #[arg(long, default_value_t = 1e-2)]
    pub distinctness: f64,
    /// Worker threads for the restarts (results are thread-invariant).
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Seed for plants and restarts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl AmbiguityArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            max_iters: self.max_iters,
            tol: self.tol,
            restarts: self.restarts,
            seed: self.seed,
            distinctness_threshold: self.distinctness,
            threads: self.threads,
        }
    }

    fn params(&self) -> Vec<(&'static str, serde_json::Value)> {
        vec![
            ("dim", json!(self.dim)),
            ("frames", json!(self.frames)),
            ("trials", json!(self.trials)),
            ("flat", json!(self.flat)),
            ("min_members", json!(self.min_members)),
            ("max_iters", json!(self.max_iters)),
            ("tol", json!(self.tol)),
            ("restarts", json!(self.restarts)),
            ("distinctness", json!(self.distinctness)),
            ("threads", json!(self.threads)),
        ]
    }
}

pub fn run(args: &AmbiguityArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    let frames = build_frames(args.dim, &args.frames)?;
    if args.flat {
        run_flat(args, &frames, csv_dir)
    } else {
        run_random(args, &frames, csv_dir)
    }
}

fn run_random(
    args: &AmbiguityArgs,
    frames: &FrameSet,
    csv_dir: Option<&Path>,
) -> CliResult<RunResult> {
    let cfg = args.config();
    let witnesses = ambiguity_search(frames, &cfg, args.trials)?;
    let mut rows = Vec::with_capacity(witnesses.len());
    let mut all_certified = true;
    for w in &witnesses {
        let certified = certify_witness(w, frames, args.tol, args.distinctness)?;
        all_certified &= certified;
        rows.push(json!({
            "distance": w.distance,
            "residual_x": w.residual_x,
            "residual_y": w.residual_y,
            "x": state_json(&w.x),
            "y": state_json(&w.y),
            "profile": w.profile.rows(),
            "certified": certified,
        }));
    }

    if let Some(dir) = csv_dir {
        let mut csv = String::from("witness,distance,residual_x,residual_y\n");
        for (i, w) in witnesses.iter().enumerate() {
            writeln!(csv, "{i},{},{},{}", w.distance, w.residual_x, w.residual_y)?;
        }
        write_side_file(dir, "witnesses.csv", csv.as_bytes())?;
    }

    Ok(RunResult {
        experiment: "ambiguity",
        params: params_map(args.params()),
        outputs: json!({
            "mode": "random-plant",
            "trials": args.trials,
            "witness_count": witnesses.len(),
            "witnesses": rows,
            // An empty list reports that the search found nothing — it is
            // not a uniqueness certificate.
            "absence_is_not_uniqueness": true,
        }),
        // The report is valid iff every witness it presents re-certifies;
        // finding none is a valid (empty) outcome.
        pass: all_certified,
        seed: args.seed,
    })
}

/// The profile shared by every nonzero Gauss state on ℤ/pℤ: all point
/// magnitudes 1, all character magnitudes 1/√dim.
fn flat_profile(frames: &FrameSet) -> CliResult<MagnitudeProfile> {
    let labels: Vec<_> = frames.frames().iter().map(|f| f.label()).collect();
    if labels != ["standard", "character"] {
        return Err(format!(
            "the flat profile is defined for --frames standard,character, got {labels:?}"
        )
        .into());
    }
    let dim = frames.dim();
    let rows = vec![vec![1.0; dim], vec![1.0 / (dim as f64).sqrt(); dim]];
    Ok(MagnitudeProfile::new(rows, false)?)
}

fn run_flat(
    args: &AmbiguityArgs,
    frames: &FrameSet,
    csv_dir: Option<&Path>,
) -> CliResult<RunResult> {
    let profile = flat_profile(frames)?;
    let mut members: Vec<(StateVector, f64, usize)> = Vec::new();
    let mut converged_runs = 0usize;
    for t in 0..args.trials {
        // Each trial is one fresh single-restart run on its own seed.
        let cfg = SolverConfig {
            seed: args.seed.wrapping_add(t as u64),
            restarts: 1,
            threads: 1,
            ..args.config()
        };
        let rec = reconstruct(frames, &profile, &cfg)?;
        if !rec.converged {
            continue;
        }
        converged_runs += 1;
        let mut distinct = true;
        for (m, _, _) in &members {
            if projective_distance(m, &rec.state)? < args.distinctness {
                distinct = false;
                break;
            }
        }
        if distinct {
            members.push((rec.state, rec.residual, t));
        }
    }

    let mut verified = true;
    let mut min_pairwise = 1.0f64;
    for (i, (m, _, _)) in members.iter().enumerate() {
        verified &= is_member(m, frames, &profile, args.tol)?;
        for (other, _, _) in &members[..i] {
            min_pairwise = min_pairwise.min(projective_distance(m, other)?);
        }
    }
    if members.len() < 2 {
        min_pairwise = 0.0;
    }

    if let Some(dir) = csv_dir {
        let mut csv = String::from("member,trial,residual\n");
        for (i, (_, residual, trial)) in members.iter().enumerate() {
            writeln!(csv, "{i},{trial},{residual}")?;
        }
        write_side_file(dir, "members.csv", csv.as_bytes())?;
    }

    let rows: Vec<_> = members
        .iter()
        .map(|(m, residual, trial)| {
            json!({
                "state": state_json(m),
                "residual": residual,
                "trial": trial,
            })
        })
        .collect();
    let member_count = members.len();
    Ok(RunResult {
        experiment: "ambiguity",
        params: params_map(args.params()),
        outputs: json!({
            "mode": "flat-profile",
            "trials": args.trials,
            "converged_runs": converged_runs,
            "member_count": member_count,
            "min_pairwise_distance": min_pairwise,
            "members": rows,
        }),
        pass: verified && member_count >= args.min_members,
        seed: args.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_args() -> AmbiguityArgs {
        AmbiguityArgs {
            dim: 7,
            frames: vec!["standard".into(), "character".into()],
            trials: 20,
            flat: false,
            min_members: 2,
            max_iters: 500,
            tol: 1e-6,
            restarts: 20,
            distinctness: 1e-2,
            threads: 1,
            seed: 0,
        }
    }

    #[test]
    fn flat_profile_collects_many_distinct_members() {
        let args = AmbiguityArgs {
            flat: true,
            min_members: 6,
            ..default_args()
        };
        let run = run(&args, None).unwrap();
        assert!(run.pass, "outputs {}", run.outputs);
        assert!(run.outputs["member_count"].as_u64().unwrap() >= 6);
        assert!(run.outputs["min_pairwise_distance"].as_f64().unwrap() >= 1e-2);
    }

    #[test]
    fn flat_mode_requires_the_two_frame_pair() {
        let args = AmbiguityArgs {
            flat: true,
            frames: vec!["standard".into()],
            ..default_args()
        };
        assert!(run(&args, None).is_err());
    }

    #[test]
    fn random_mode_reports_only_certified_witnesses() {
        let args = AmbiguityArgs {
            trials: 10,
            ..default_args()
        };
        let run = run(&args, None).unwrap();
        assert!(run.pass);
        let witnesses = run.outputs["witnesses"].as_array().unwrap();
        assert_eq!(
            witnesses.len(),
            run.outputs["witness_count"].as_u64().unwrap() as usize
        );
        for w in witnesses {
            assert_eq!(w["certified"], json!(true));
        }
    }
}
