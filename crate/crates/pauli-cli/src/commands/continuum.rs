//! `continuum`: the grid-sampled ambiguity constructions — the constant-
//! magnitude chirp, reflection–conjugation partners, the rotated 3-D
//! Gaussian family, and spherically symmetric conjugate pairs.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use clap::{Args, Subcommand};
use nalgebra::Matrix3;
use num_complex::Complex64;
use serde_json::{json, Value};

use pauli_core::constructions::{
    certify_magnitude_pair, chirp, chirp_flat_band, kontsevich_pair, reflect_conjugate,
    spherical_conjugate_pair, ChirpSpec, KontsevichSpec, MomentumTolerance, PairCertificate,
};
use pauli_core::statespace::{GridFunction, GridSpec};

use crate::report::{params_map, write_side_file, CliResult, RunResult};

/// Sample one of the explicit continuum constructions and certify its
/// magnitude profile.
#[derive(Debug, Args)]
pub struct ContinuumArgs {
    #[command(subcommand)]
    pub which: ContinuumKind,
}

#[derive(Debug, Subcommand)]
pub enum ContinuumKind {
    /// Constant-magnitude chirp e^{iαx²}: informational flatness report
    /// (the function is not square-integrable, so nothing is pass/failed).
    Chirp(ChirpArgs),
    /// Chirped Gaussian ψ and its reflection–conjugation partner ψ₁.
    Reflect(ReflectArgs),
    /// 3-D Gaussian with a rotated phase quadric: same position and
    /// momentum magnitudes, different ray.
    Kontsevich(KontsevichArgs),
    /// Spherically symmetric state and its complex conjugate.
    Spherical(SphericalArgs),
}

#[derive(Debug, Args)]
pub struct ChirpArgs {
    /// Chirp rate α (nonzero).
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Samples per axis.
    #[arg(long, default_value_t = 4096)]
    pub points: usize,
    /// Half-width L of the sampling window [−L, L].
    #[arg(long, default_value_t = 40.0)]
    pub extent: f64,
    /// Relative tolerance for the in-band flatness measurement.
    #[arg(long, default_value_t = 0.2)]
    pub band_rel_tol: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ReflectArgs {
    /// Samples per axis.
    #[arg(long, default_value_t = 1024)]
    pub points: usize,
    /// Half-width L of the sampling window [−L, L].
    #[arg(long, default_value_t = 12.0)]
    pub extent: f64,
    /// Linear phase coefficient: ψ(x) = e^{−x²/2}·e^{i(ax + bx²)}.
    #[arg(long, default_value_t = 1.0)]
    pub phase_linear: f64,
    /// Quadratic phase coefficient.
    #[arg(long, default_value_t = -1.0)]
    pub phase_quad: f64,
    /// Largest allowed absolute momentum-magnitude deviation.
    #[arg(long, default_value_t = 1e-8)]
    pub momentum_tol: f64,
    /// Smallest projective distance at which the pair counts as distinct.
    #[arg(long, default_value_t = 0.05)]
    pub min_distance: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct KontsevichArgs {
    /// Gaussian decay rate α₁ of the modulus e^{−α₁|x|²}.
    #[arg(long, default_value_t = 1.0)]
    pub alpha1: f64,
    /// Phase quadric coefficient α₂ of x₁² + x₂² − x₃².
    #[arg(long, default_value_t = 1.0)]
    pub alpha2: f64,
    /// Rotation angle about the x₁ axis, in radians.
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub angle: f64,
    /// Samples per axis of the 3-D grid.
    #[arg(long, default_value_t = 32)]
    pub points: usize,
    /// Half-width L of the sampling window [−L, L]³.
    #[arg(long, default_value_t = 6.0)]
    pub extent: f64,
    /// Largest allowed relative momentum-magnitude deviation.
    #[arg(long, default_value_t = 1e-6)]
    pub momentum_rel_tol: f64,
    /// Compare only samples with |ψ̂₀| above this fraction of its peak.
    #[arg(long, default_value_t = 1e-6)]
    pub momentum_mask: f64,
    /// Smallest projective distance at which the pair counts as distinct.
    #[arg(long, default_value_t = 0.1)]
    pub min_distance: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SphericalArgs {
    /// Radial phase rate c: ψ₀(r) = e^{−r²/2}·e^{icr²}.
    #[arg(long, default_value_t = 1.0)]
    pub radial_chirp: f64,
    /// Samples per axis of the 3-D grid.
    #[arg(long, default_value_t = 32)]
    pub points: usize,
    /// Half-width L of the sampling window [−L, L]³.
    #[arg(long, default_value_t = 6.0)]
    pub extent: f64,
    /// Largest allowed absolute momentum-magnitude deviation.
    #[arg(long, default_value_t = 1e-8)]
    pub momentum_tol: f64,
    /// Smallest projective distance at which the pair counts as distinct.
    #[arg(long, default_value_t = 0.05)]
    pub min_distance: f64,
    /// Recorded in the report; this command draws no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(args: &ContinuumArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    match &args.which {
        ContinuumKind::Chirp(a) => run_chirp(a, csv_dir),
        ContinuumKind::Reflect(a) => run_reflect(a, csv_dir),
        ContinuumKind::Kontsevich(a) => run_kontsevich(a, csv_dir),
        ContinuumKind::Spherical(a) => run_spherical(a, csv_dir),
    }
}

fn run_chirp(args: &ChirpArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    let spec = ChirpSpec::new(args.alpha)?;
    let grid = GridSpec::new(1, args.points, args.extent)?;
    let band = chirp_flat_band(&spec, grid, args.band_rel_tol)?;
    if let Some(dir) = csv_dir {
        let f = chirp(&spec, grid)?;
        write_pair_csv(dir, "chirp", &f)?;
    }
    Ok(RunResult {
        experiment: "continuum-chirp",
        params: params_map(vec![
            ("alpha", json!(args.alpha)),
            ("points", json!(args.points)),
            ("extent", json!(args.extent)),
            ("band_rel_tol", json!(args.band_rel_tol)),
        ]),
        outputs: json!({
            "closed_form_magnitude": band.closed_form_magnitude,
            "band_halfwidth": band.band_halfwidth,
            "samples_in_band": band.samples_in_band,
            "max_rel_dev": band.max_rel_dev,
            "within_band_tol": band.pass,
            // The chirp is not square-integrable, so the closed form is a
            // heuristic target: the run records deviations and always
            // counts as informational.
            "informational": true,
        }),
        pass: true,
        seed: args.seed,
    })
}

fn pair_outputs(cert: &PairCertificate, min_distance: f64) -> (Value, bool) {
    let distance_ok = cert.projective_distance >= min_distance;
    let outputs = json!({
        "position_bitwise": cert.position_bitwise,
        "momentum_dev": cert.momentum_dev,
        "momentum_ok": cert.momentum_ok,
        "projective_distance": cert.projective_distance,
        "distance_ok": distance_ok,
    });
    (outputs, cert.pass && distance_ok)
}

fn write_pair_csv(dir: &Path, stem: &str, g: &GridFunction) -> CliResult<()> {
    let mut position = Vec::new();
    g.write_csv(&mut position)?;
    write_side_file(dir, &format!("{stem}_position.csv"), &position)?;
    let mut momentum = Vec::new();
    g.fourier()?.write_csv(&mut momentum)?;
    write_side_file(dir, &format!("{stem}_momentum.csv"), &momentum)?;
    Ok(())
}

fn run_reflect(args: &ReflectArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    let grid = GridSpec::new(1, args.points, args.extent)?;
    let (a, b) = (args.phase_linear, args.phase_quad);
    let psi = GridFunction::from_polar_fn(grid, |x| {
        ((-x[0] * x[0] / 2.0).exp(), a * x[0] + b * x[0] * x[0])
    })?;
    let psi1 = reflect_conjugate(&psi)?;
    let cert = certify_magnitude_pair(
        &psi,
        &psi1,
        MomentumTolerance::Absolute {
            tol: args.momentum_tol,
        },
    )?;
    if let Some(dir) = csv_dir {
        write_pair_csv(dir, "psi", &psi)?;
        write_pair_csv(dir, "partner", &psi1)?;
    }
    let (outputs, pass) = pair_outputs(&cert, args.min_distance);
    Ok(RunResult {
        experiment: "continuum-reflect",
        params: params_map(vec![
            ("points", json!(args.points)),
            ("extent", json!(args.extent)),
            ("phase_linear", json!(args.phase_linear)),
            ("phase_quad", json!(args.phase_quad)),
            ("momentum_tol", json!(args.momentum_tol)),
            ("min_distance", json!(args.min_distance)),
        ]),
        outputs,
        pass,
        seed: args.seed,
    })
}

fn rotation_about_x1(angle: f64) -> Matrix3<f64> {
    if angle == FRAC_PI_2 {
        // The flagship quarter turn in exact arithmetic rather than
        // cos(π/2) ≈ 6e−17.
        return KontsevichSpec::quarter_turn_about_x1();
    }
    let (s, c) = angle.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

fn run_kontsevich(args: &KontsevichArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    let spec = KontsevichSpec::new(args.alpha1, args.alpha2, rotation_about_x1(args.angle))?;
    let grid = GridSpec::new(3, args.points, args.extent)?;
    let (psi, psi_rot) = kontsevich_pair(&spec, grid)?;
    let cert = certify_magnitude_pair(
        &psi,
        &psi_rot,
        MomentumTolerance::RelativeMasked {
            tol: args.momentum_rel_tol,
            mask: args.momentum_mask,
        },
    )?;
    if let Some(dir) = csv_dir {
        write_pair_csv(dir, "psi", &psi)?;
        write_pair_csv(dir, "partner", &psi_rot)?;
    }
    let (outputs, pass) = pair_outputs(&cert, args.min_distance);
    Ok(RunResult {
        experiment: "continuum-kontsevich",
        params: params_map(vec![
            ("alpha1", json!(args.alpha1)),
            ("alpha2", json!(args.alpha2)),
            ("angle", json!(args.angle)),
            ("points", json!(args.points)),
            ("extent", json!(args.extent)),
            ("momentum_rel_tol", json!(args.momentum_rel_tol)),
            ("momentum_mask", json!(args.momentum_mask)),
            ("min_distance", json!(args.min_distance)),
        ]),
        outputs,
        pass,
        seed: args.seed,
    })
}

fn run_spherical(args: &SphericalArgs, csv_dir: Option<&Path>) -> CliResult<RunResult> {
    let grid = GridSpec::new(3, args.points, args.extent)?;
    let c = args.radial_chirp;
    let (psi, psi_conj) = spherical_conjugate_pair(
        |r| Complex64::from_polar((-r * r / 2.0).exp(), c * r * r),
        grid,
    )?;
    let cert = certify_magnitude_pair(
        &psi,
        &psi_conj,
        MomentumTolerance::Absolute {
            tol: args.momentum_tol,
        },
    )?;
    if let Some(dir) = csv_dir {
        write_pair_csv(dir, "psi", &psi)?;
        write_pair_csv(dir, "partner", &psi_conj)?;
    }
    let (outputs, pass) = pair_outputs(&cert, args.min_distance);
    Ok(RunResult {
        experiment: "continuum-spherical",
        params: params_map(vec![
            ("radial_chirp", json!(args.radial_chirp)),
            ("points", json!(args.points)),
            ("extent", json!(args.extent)),
            ("momentum_tol", json!(args.momentum_tol)),
            ("min_distance", json!(args.min_distance)),
        ]),
        outputs,
        pass,
        seed: args.seed,
    })
}
