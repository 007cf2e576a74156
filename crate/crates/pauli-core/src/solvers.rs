//! Numerical exploration of magnitude-profile solution sets: alternating
//! magnitude projections with seeded random restarts, a search for pairs
//! of projectively distinct states sharing one profile, and a
//! classification harness probing whether the only solutions of the
//! two-magnitude grid problem are the input state and its
//! reflection-conjugate.
//!
//! None of this is proof-grade: an empty search result is reported as
//! absence of witnesses, never as uniqueness.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::constructions::reflect_conjugate;
use crate::error::{PauliError, Result};
use crate::measurement::{
    forward, residual, BasisFrame, FrameSet, MagnitudeProfile, NORMALIZED_STATE_TOL,
};
use crate::statespace::{projective_distance, GridFunction, GridSpec, StateVector};

/// Window length of the stagnation rule: a restart stops early when the
/// residual improves by less than [`STAGNATION_TOL`] over this many
/// sweeps (alternating projections stall near non-transversal
/// intersections).
pub const STAGNATION_WINDOW: usize = 50;

/// Minimum residual improvement per stagnation window.
pub const STAGNATION_TOL: f64 = 1e-14;

/// Residual below which an unclassified probe result counts as
/// discretization-level counter-evidence (subject to grid-refinement
/// confirmation; see [`conjecture_probe_refined`]).
pub const CONJECTURE_EVIDENCE_TOL: f64 = 1e-8;

/// Tunables of the alternating-projection solver. All runs are
/// deterministic functions of these fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Projection sweeps per restart (≥ 1).
    pub max_iters: usize,
    /// Residual threshold declaring convergence (> 0).
    pub tol: f64,
    /// Independent random starts (≥ 1).
    pub restarts: usize,
    /// Base seed; restart `r` draws from stream `r` of this seed.
    pub seed: u64,
    /// Projective distance below which two states count as the same ray
    /// blurred by solver noise (in (0, 1)).
    pub distinctness_threshold: f64,
    /// Worker threads for restarts (≥ 1); results are identical for any
    /// thread count.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 500,
            tol: 1e-6,
            restarts: 20,
            seed: 0,
            distinctness_threshold: 1e-2,
            threads: 1,
        }
    }
}

impl SolverConfig {
    /// Checks every field invariant.
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(PauliError::InvalidParameter(
                "max_iters must be at least 1".into(),
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(PauliError::InvalidParameter(format!(
                "tol must be positive and finite, got {}",
                self.tol
            )));
        }
        if self.restarts < 1 {
            return Err(PauliError::InvalidParameter(
                "restarts must be at least 1".into(),
            ));
        }
        if !(self.distinctness_threshold > 0.0 && self.distinctness_threshold < 1.0) {
            return Err(PauliError::InvalidParameter(format!(
                "distinctness_threshold must lie in (0, 1), got {}",
                self.distinctness_threshold
            )));
        }
        if self.threads < 1 {
            return Err(PauliError::InvalidParameter(
                "threads must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Complex standard normal vector, normalized to the unit sphere.
fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    loop {
        let coeffs: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        let x = StateVector::new(coeffs)?;
        let n = x.norm();
        if n > 0.0 {
            return Ok(x.scale(Complex64::new(1.0 / n, 0.0)));
        }
    }
}

/// Plants a uniformly random ray and returns it with its magnitude
/// profile over `frames`. The plant draws from stream `u64::MAX` of
/// `seed`, disjoint from every stream a reconstruction run can use, so a
/// planted problem and its solve never share randomness.
pub fn plant_profile(frames: &FrameSet, seed: u64) -> Result<(StateVector, MagnitudeProfile)> {
    let mut rng = stream_rng(seed, u64::MAX);
    let x = random_state(frames.dim(), &mut rng)?;
    let profile = forward(&x, frames)?;
    Ok((x, profile))
}

/// Nearest state whose magnitudes in `frame` equal `row`: expands `x`,
/// replaces each coefficient magnitude by the target while keeping its
/// phase (a vanishing coefficient gets phase 0), and resynthesizes.
pub fn project_magnitudes(x: &StateVector, frame: &BasisFrame, row: &[f64]) -> Result<StateVector> {
    if x.dim() != frame.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: frame.dim(),
            got: x.dim(),
        });
    }
    if row.len() != frame.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: frame.dim(),
            got: row.len(),
        });
    }
    for &b in row {
        if !(b >= 0.0 && b.is_finite()) {
            return Err(PauliError::InvalidParameter(format!(
                "target magnitudes must be finite and nonnegative, got {b}"
            )));
        }
    }
    let coeffs = frame.analyze(x)?;
    let replaced: Vec<Complex64> = coeffs
        .coeffs()
        .iter()
        .zip(row)
        .map(|(c, &b)| {
            if c.norm() == 0.0 {
                Complex64::new(b, 0.0)
            } else {
                Complex64::from_polar(b, c.arg())
            }
        })
        .collect();
    frame.synthesize(&StateVector::new(replaced)?)
}

/// One restart's outcome.
#[derive(Debug, Clone)]
struct RunOutcome {
    state: StateVector,
    residual: f64,
    iterations: usize,
    converged: bool,
    history: Vec<f64>,
}

fn run_restart(
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    cfg: &SolverConfig,
    stream: u64,
) -> Result<RunOutcome> {
    let mut rng = stream_rng(cfg.seed, stream);
    let mut x = random_state(frames.dim(), &mut rng)?;
    let mut history = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut best = f64::INFINITY;
    for sweep in 1..=cfg.max_iters {
        for (frame, row) in frames.frames().iter().zip(profile.rows()) {
            x = project_magnitudes(&x, frame, row)?;
        }
        let r = residual(&x, frames, profile)?;
        history.push(r);
        iterations = sweep;
        best = best.min(r);
        if r <= cfg.tol {
            converged = true;
            break;
        }
        if sweep > STAGNATION_WINDOW && history[sweep - 1 - STAGNATION_WINDOW] - r < STAGNATION_TOL
        {
            break;
        }
    }
    Ok(RunOutcome {
        state: x,
        residual: history[iterations - 1],
        iterations,
        converged,
        history,
    })
}

/// Runs restarts `0..cfg.restarts` on rng streams `stream_base + r`.
///
/// Single-threaded execution stops at the first converged restart; with
/// more threads every restart runs, but the selected result is the same
/// because selection only looks at indices up to the first convergence.
fn run_restarts(
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    cfg: &SolverConfig,
    stream_base: u64,
) -> Result<Vec<RunOutcome>> {
    if cfg.threads <= 1 {
        let mut outcomes = Vec::new();
        for r in 0..cfg.restarts {
            let outcome = run_restart(frames, profile, cfg, stream_base + r as u64)?;
            let stop = outcome.converged;
            outcomes.push(outcome);
            if stop {
                break;
            }
        }
        return Ok(outcomes);
    }
    let workers = cfg.threads.min(cfg.restarts);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for t in 0..workers {
            handles.push(scope.spawn(move || {
                let mut partial = Vec::new();
                let mut r = t;
                while r < cfg.restarts {
                    partial.push((r, run_restart(frames, profile, cfg, stream_base + r as u64)));
                    r += workers;
                }
                partial
            }));
        }
        let mut merged: Vec<Option<RunOutcome>> = (0..cfg.restarts).map(|_| None).collect();
        for handle in handles {
            for (r, outcome) in handle.join().expect("restart worker panicked") {
                merged[r] = Some(outcome?);
            }
        }
        Ok(merged.into_iter().map(Option::unwrap).collect())
    })
}

/// The first converged restart in index order, else the minimum-residual
/// restart (ties to the lowest index). Deterministic and independent of
/// the thread count.
fn select_outcome(outcomes: &[RunOutcome]) -> usize {
    if let Some(i) = outcomes.iter().position(|o| o.converged) {
        return i;
    }
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate().skip(1) {
        if o.residual < outcomes[best].residual {
            best = i;
        }
    }
    best
}

/// Result of [`reconstruct`]: the selected restart's final state and
/// residual trace.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub state: StateVector,
    pub residual: f64,
    /// Sweeps executed by the selected restart.
    pub iterations: usize,
    /// True exactly when `residual ≤ cfg.tol`.
    pub converged: bool,
    /// Index of the selected restart.
    pub restart: usize,
    /// Residual after each sweep of the selected restart.
    pub residual_history: Vec<f64>,
}

fn check_problem_shape(frames: &FrameSet, profile: &MagnitudeProfile) -> Result<()> {
    if profile.num_frames() != frames.len() || profile.dim() != frames.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: frames.len() * frames.dim(),
            got: profile.num_frames() * profile.dim(),
        });
    }
    Ok(())
}

fn pick_reconstruction(outcomes: Vec<RunOutcome>) -> Reconstruction {
    let chosen = select_outcome(&outcomes);
    let outcome = outcomes.into_iter().nth(chosen).expect("selected restart");
    Reconstruction {
        state: outcome.state,
        residual: outcome.residual,
        iterations: outcome.iterations,
        converged: outcome.converged,
        restart: chosen,
        residual_history: outcome.history,
    }
}

fn reconstruct_streams(
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    cfg: &SolverConfig,
    stream_base: u64,
) -> Result<Reconstruction> {
    cfg.validate()?;
    check_problem_shape(frames, profile)?;
    let outcomes = run_restarts(frames, profile, cfg, stream_base)?;
    Ok(pick_reconstruction(outcomes))
}

/// Seeks a state matching `profile` by cycling magnitude projections over
/// all frames from random starts; returns the first converged restart, or
/// the best non-converged one. Deterministic given `cfg.seed`.
pub fn reconstruct(
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    cfg: &SolverConfig,
) -> Result<Reconstruction> {
    reconstruct_streams(frames, profile, cfg, 0)
}

/// The fixed-compute variant of [`reconstruct`]: restart attempts run on
/// consecutive streams, each capped at `cfg.max_iters` sweeps and at the
/// remaining share of one pooled budget of `total_iters` sweeps, until an
/// attempt converges or the pool is spent.
///
/// Attempts the stagnation rule cuts short return their unused sweeps to
/// the pool, so hard problems draw many more starts than
/// `total_iters / cfg.max_iters` at the same total cost. `cfg.restarts`
/// is not consulted, and execution is single-threaded: reallocating the
/// budget is inherently sequential. Deterministic given `cfg.seed`.
pub fn reconstruct_budgeted(
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    cfg: &SolverConfig,
    total_iters: usize,
) -> Result<Reconstruction> {
    cfg.validate()?;
    check_problem_shape(frames, profile)?;
    if total_iters < 1 {
        return Err(PauliError::InvalidParameter(
            "iteration budget must be at least 1".into(),
        ));
    }
    let mut remaining = total_iters;
    let mut outcomes = Vec::new();
    let mut stream = 0u64;
    while remaining > 0 {
        let capped = SolverConfig {
            max_iters: cfg.max_iters.min(remaining),
            ..*cfg
        };
        let outcome = run_restart(frames, profile, &capped, stream)?;
        remaining -= outcome.iterations.min(remaining);
        stream += 1;
        let stop = outcome.converged;
        outcomes.push(outcome);
        if stop {
            break;
        }
    }
    Ok(pick_reconstruction(outcomes))
}

/// A pair of states sharing one magnitude profile while being
/// projectively distinct — a concrete non-uniqueness certificate.
#[derive(Debug, Clone)]
pub struct AmbiguityWitness {
    pub x: StateVector,
    pub y: StateVector,
    pub profile: MagnitudeProfile,
    pub residual_x: f64,
    pub residual_y: f64,
    pub distance: f64,
}

/// Re-derives both residuals and the projective distance from scratch:
/// true iff both residuals are at most `tol` and the distance is at least
/// `distinctness_threshold`. The stored fields are ignored.
pub fn certify_witness(
    w: &AmbiguityWitness,
    frames: &FrameSet,
    tol: f64,
    distinctness_threshold: f64,
) -> Result<bool> {
    let rx = residual(&w.x, frames, &w.profile)?;
    let ry = residual(&w.y, frames, &w.profile)?;
    let d = projective_distance(&w.x, &w.y)?;
    Ok(rx <= tol && ry <= tol && d >= distinctness_threshold)
}

/// Plants random states, reconstructs their profiles from independent
/// seeds, and collects certified pairs that land on a different ray. An
/// empty result means no witness was found, not that none exists.
pub fn ambiguity_search(
    frames: &FrameSet,
    cfg: &SolverConfig,
    trials: usize,
) -> Result<Vec<AmbiguityWitness>> {
    cfg.validate()?;
    if trials < 1 {
        return Err(PauliError::InvalidParameter(
            "trials must be at least 1".into(),
        ));
    }
    let mut witnesses = Vec::new();
    for t in 0..trials {
        // Per-trial stream block: the plant takes the base stream, the
        // reconstruction's restarts the following ones.
        let base = ((t as u64) + 1) << 32;
        let mut rng = stream_rng(cfg.seed, base);
        let x = random_state(frames.dim(), &mut rng)?;
        let profile = forward(&x, frames)?;
        let rec = reconstruct_streams(frames, &profile, cfg, base + 1)?;
        if !rec.converged {
            continue;
        }
        let distance = projective_distance(&x, &rec.state)?;
        if distance < cfg.distinctness_threshold {
            continue;
        }
        let witness = AmbiguityWitness {
            residual_x: residual(&x, frames, &profile)?,
            residual_y: rec.residual,
            x,
            y: rec.state,
            profile,
            distance,
        };
        if certify_witness(&witness, frames, cfg.tol, cfg.distinctness_threshold)? {
            witnesses.push(witness);
        }
    }
    Ok(witnesses)
}

/// Outcome of the two-magnitude classification probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureProbeReport {
    /// Independent solver runs attempted.
    pub runs: usize,
    /// Runs reaching the residual threshold.
    pub converged: usize,
    /// Converged runs on the input's ray.
    pub matches_input: usize,
    /// Converged runs on the reflection-conjugate's ray.
    pub matches_reflect: usize,
    /// Converged runs on neither ray with residual at most
    /// [`CONJECTURE_EVIDENCE_TOL`]: refinement candidates.
    pub other_flagged: usize,
    /// Converged runs on neither ray but above the evidence threshold:
    /// treated as solver artifacts.
    pub other_discarded: usize,
    /// Flagged counts at the three refinement levels (N, 2N, 4N) when a
    /// refinement pass ran.
    pub refinement_flags: Option<[usize; 3]>,
    /// True only when flagged candidates survived every refinement level.
    pub counter_evidence: bool,
}

/// Reconstructs `psi`'s two-magnitude profile (sample basis and grid
/// Fourier transform) from `cfg.restarts` independent starts and
/// classifies each converged result as proportional to the input, to its
/// reflection-conjugate, or neither.
///
/// `psi` must be one-dimensional and unit-normalized in the grid norm.
/// Unclassified results at residual ≤ [`CONJECTURE_EVIDENCE_TOL`] are
/// only *candidates*: confirming them requires the grid-refinement pass
/// of [`conjecture_probe_refined`], since the underlying question
/// concerns the continuum and refinement-unstable candidates are grid
/// artifacts.
pub fn conjecture_probe(psi: &GridFunction, cfg: &SolverConfig) -> Result<ConjectureProbeReport> {
    cfg.validate()?;
    let spec = *psi.spec();
    if spec.dims() != 1 {
        return Err(PauliError::DimensionMismatch {
            expected: 1,
            got: spec.dims(),
        });
    }
    if (psi.norm_l2() - 1.0).abs() > NORMALIZED_STATE_TOL {
        return Err(PauliError::InvalidParameter(format!(
            "probe input must be unit-normalized on the grid, got norm {}",
            psi.norm_l2()
        )));
    }
    let frames = FrameSet::new(vec![
        BasisFrame::standard(spec.len())?,
        BasisFrame::grid_fourier(spec),
    ])?;
    let target = psi.to_state_vector()?;
    let reflected = reflect_conjugate(psi)?.to_state_vector()?;
    let profile = forward(&target, &frames)?;

    let mut report = ConjectureProbeReport {
        runs: cfg.restarts,
        converged: 0,
        matches_input: 0,
        matches_reflect: 0,
        other_flagged: 0,
        other_discarded: 0,
        refinement_flags: None,
        counter_evidence: false,
    };
    let single = SolverConfig {
        restarts: 1,
        threads: 1,
        ..*cfg
    };
    for r in 0..cfg.restarts {
        let outcome = run_restart(&frames, &profile, &single, r as u64)?;
        if !outcome.converged {
            continue;
        }
        report.converged += 1;
        if projective_distance(&outcome.state, &target)? <= cfg.distinctness_threshold {
            report.matches_input += 1;
        } else if projective_distance(&outcome.state, &reflected)? <= cfg.distinctness_threshold {
            report.matches_reflect += 1;
        } else if outcome.residual <= CONJECTURE_EVIDENCE_TOL {
            report.other_flagged += 1;
        } else {
            report.other_discarded += 1;
        }
    }
    Ok(report)
}

fn sample_normalized(sampler: &impl Fn(f64) -> Complex64, grid: GridSpec) -> Result<GridFunction> {
    let raw = GridFunction::from_complex_fn(grid, |x| sampler(x[0]))?;
    let n = raw.norm_l2();
    if !(n > 0.0 && n.is_finite()) {
        return Err(PauliError::ZeroVector);
    }
    let scaled = raw.complex_values().iter().map(|v| v / n).collect();
    GridFunction::from_complex_values(grid, scaled)
}

/// Runs [`conjecture_probe`] on `sampler` discretized over `grid`, and —
/// only if unclassified candidates appear — repeats the probe at twice
/// and four times the resolution (same extent). `counter_evidence` is set
/// only when candidates survive at all three levels.
pub fn conjecture_probe_refined(
    sampler: impl Fn(f64) -> Complex64,
    grid: GridSpec,
    cfg: &SolverConfig,
) -> Result<ConjectureProbeReport> {
    if grid.dims() != 1 {
        return Err(PauliError::DimensionMismatch {
            expected: 1,
            got: grid.dims(),
        });
    }
    let mut report = conjecture_probe(&sample_normalized(&sampler, grid)?, cfg)?;
    if report.other_flagged == 0 {
        return Ok(report);
    }
    let mut flags = [report.other_flagged, 0, 0];
    for (slot, factor) in [(1usize, 2usize), (2, 4)] {
        let fine = GridSpec::new(1, grid.points() * factor, grid.extent())?;
        let refined = conjecture_probe(&sample_normalized(&sampler, fine)?, cfg)?;
        flags[slot] = refined.other_flagged;
    }
    report.refinement_flags = Some(flags);
    report.counter_evidence = flags.iter().all(|&c| c > 0);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gauss_state, GaussStateSpec};
    use crate::measurement::is_member;
    use crate::statespace::inner;
    use nalgebra::DMatrix;
    use rand::rngs::StdRng;

    fn random_unitary_frame(label: &str, dim: usize, seed: u64) -> BasisFrame {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let q = m.qr().q();
        BasisFrame::unitary(label, q).unwrap()
    }

    fn planted_problem(dim: usize, seed: u64) -> (FrameSet, StateVector, MagnitudeProfile) {
        let frames = FrameSet::new(vec![
            BasisFrame::standard(dim).unwrap(),
            random_unitary_frame("rotated", dim, seed),
        ])
        .unwrap();
        let mut rng = stream_rng(seed, 999);
        let x = random_state(dim, &mut rng).unwrap();
        let profile = forward(&x, &frames).unwrap();
        (frames, x, profile)
    }

    #[test]
    fn config_validation_rejects_bad_fields() {
        let good = SolverConfig::default();
        assert!(good.validate().is_ok());
        for bad in [
            SolverConfig {
                max_iters: 0,
                ..good
            },
            SolverConfig { tol: 0.0, ..good },
            SolverConfig {
                tol: f64::NAN,
                ..good
            },
            SolverConfig {
                restarts: 0,
                ..good
            },
            SolverConfig {
                distinctness_threshold: 0.0,
                ..good
            },
            SolverConfig {
                distinctness_threshold: 1.0,
                ..good
            },
            SolverConfig { threads: 0, ..good },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn projection_reaches_the_target_row() {
        let dim = 8;
        let frames = [
            BasisFrame::standard(dim).unwrap(),
            random_unitary_frame("rotated", dim, 3),
            BasisFrame::cyclic_character(dim).unwrap(),
        ];
        let mut rng = stream_rng(11, 0);
        let x = random_state(dim, &mut rng).unwrap();
        for frame in &frames {
            let row: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.1..1.0)).collect();
            let projected = project_magnitudes(&x, frame, &row).unwrap();
            let reread = frame.analyze(&projected).unwrap();
            let dev = reread
                .coeffs()
                .iter()
                .zip(&row)
                .map(|(c, &b)| (c.norm() - b).abs())
                .fold(0.0f64, f64::max);
            assert!(dev <= 1e-12, "{}: row deviation {dev:.3e}", frame.label());

            // Idempotence for a fixed frame and row.
            let twice = project_magnitudes(&projected, frame, &row).unwrap();
            let drift = twice
                .coeffs()
                .iter()
                .zip(projected.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(drift <= 1e-14, "{}: drift {drift:.3e}", frame.label());

            // A state already matching its own row is a fixed point.
            let own: Vec<f64> = frame
                .analyze(&x)
                .unwrap()
                .coeffs()
                .iter()
                .map(|c| c.norm())
                .collect();
            let fixed = project_magnitudes(&x, frame, &own).unwrap();
            let moved = fixed
                .coeffs()
                .iter()
                .zip(x.coeffs())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(moved <= 1e-14, "{}: moved {moved:.3e}", frame.label());
        }
    }

    #[test]
    fn projection_zero_coefficient_gets_phase_zero() {
        let e1 = StateVector::basis_vector(2, 0).unwrap();
        let frame = BasisFrame::standard(2).unwrap();
        let out = project_magnitudes(&e1, &frame, &[0.0, 1.0]).unwrap();
        assert_eq!(out.coeffs()[0], Complex64::new(0.0, 0.0));
        assert_eq!(out.coeffs()[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn projection_validates_inputs() {
        let x = StateVector::basis_vector(3, 0).unwrap();
        let frame = BasisFrame::standard(2).unwrap();
        assert!(project_magnitudes(&x, &frame, &[1.0, 0.0]).is_err());
        let x2 = StateVector::basis_vector(2, 0).unwrap();
        assert!(project_magnitudes(&x2, &frame, &[1.0]).is_err());
        assert!(project_magnitudes(&x2, &frame, &[-0.1, 1.0]).is_err());
        assert!(project_magnitudes(&x2, &frame, &[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn reconstruct_recovers_planted_profile_in_dim_seven() {
        let frames = FrameSet::new(vec![
            BasisFrame::standard(7).unwrap(),
            BasisFrame::cyclic_character(7).unwrap(),
        ])
        .unwrap();
        let mut rng = stream_rng(42, 12345);
        let x = random_state(7, &mut rng).unwrap();
        let profile = forward(&x, &frames).unwrap();
        let cfg = SolverConfig {
            seed: 42,
            ..SolverConfig::default()
        };
        let rec = reconstruct(&frames, &profile, &cfg).unwrap();
        assert!(rec.converged, "residual {:.3e}", rec.residual);
        assert!(rec.residual < 1e-6);
        assert!(is_member(&rec.state, &frames, &profile, 1e-6).unwrap());
        assert_eq!(rec.residual_history.len(), rec.iterations);
    }

    #[test]
    fn budgeted_restarts_recover_hard_plants() {
        // This planted instance stalls every one of the default 20 restarts
        // at spurious fixed points, but extra attempts funded by the sweeps
        // those stalls never used do find the planted ray.
        let frames = FrameSet::new(vec![
            BasisFrame::standard(7).unwrap(),
            BasisFrame::cyclic_character(7).unwrap(),
        ])
        .unwrap();
        let (_, profile) = plant_profile(&frames, 60).unwrap();
        let cfg = SolverConfig {
            seed: 60,
            ..SolverConfig::default()
        };

        let plain = reconstruct(&frames, &profile, &cfg).unwrap();
        assert!(
            !plain.converged,
            "capped-restart run unexpectedly converged (residual {:.3e})",
            plain.residual
        );

        let budget = cfg.max_iters * cfg.restarts;
        let budgeted = reconstruct_budgeted(&frames, &profile, &cfg, budget).unwrap();
        assert!(
            budgeted.converged,
            "budgeted run stayed at residual {:.3e} after restart {}",
            budgeted.residual, budgeted.restart
        );
        assert!(is_member(&budgeted.state, &frames, &profile, 1e-6).unwrap());
        assert!(budgeted.restart >= cfg.restarts, "needed the freed budget");

        let again = reconstruct_budgeted(&frames, &profile, &cfg, budget).unwrap();
        assert_eq!(budgeted.restart, again.restart);
        assert_eq!(budgeted.residual.to_bits(), again.residual.to_bits());
    }

    #[test]
    fn budgeted_run_stops_at_first_success() {
        let (frames, _, profile) = planted_problem(7, 42);
        let cfg = SolverConfig {
            seed: 42,
            ..SolverConfig::default()
        };
        let rec = reconstruct_budgeted(&frames, &profile, &cfg, 10_000).unwrap();
        let plain = reconstruct(&frames, &profile, &cfg).unwrap();
        assert!(rec.converged);
        assert_eq!(rec.restart, plain.restart);
        assert_eq!(rec.residual.to_bits(), plain.residual.to_bits());
        assert!(rec.iterations <= 10_000);
    }

    #[test]
    fn budgeted_run_rejects_zero_budget() {
        let (frames, _, profile) = planted_problem(5, 3);
        let cfg = SolverConfig::default();
        assert!(matches!(
            reconstruct_budgeted(&frames, &profile, &cfg, 0),
            Err(PauliError::InvalidParameter(_))
        ));
    }

    #[test]
    fn reconstruct_is_deterministic_and_thread_invariant() {
        let (frames, _, profile) = planted_problem(6, 21);
        let cfg = SolverConfig {
            seed: 5,
            restarts: 8,
            max_iters: 200,
            ..SolverConfig::default()
        };
        let a = reconstruct(&frames, &profile, &cfg).unwrap();
        let b = reconstruct(&frames, &profile, &cfg).unwrap();
        assert_eq!(a.iterations, b.iterations);
        assert_eq!(a.restart, b.restart);
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
        for (u, v) in a.state.coeffs().iter().zip(b.state.coeffs()) {
            assert_eq!(u.re.to_bits(), v.re.to_bits());
            assert_eq!(u.im.to_bits(), v.im.to_bits());
        }

        let parallel = SolverConfig { threads: 4, ..cfg };
        let c = reconstruct(&frames, &profile, &parallel).unwrap();
        assert_eq!(a.restart, c.restart);
        assert_eq!(a.iterations, c.iterations);
        assert_eq!(a.residual.to_bits(), c.residual.to_bits());
    }

    #[test]
    fn reconstruct_handles_dimension_one() {
        let frames = FrameSet::new(vec![BasisFrame::standard(1).unwrap()]).unwrap();
        let profile = MagnitudeProfile::new(vec![vec![0.7]], false).unwrap();
        let rec = reconstruct(&frames, &profile, &SolverConfig::default()).unwrap();
        assert!(rec.converged);
        assert_eq!(rec.iterations, 1);
        assert!((rec.state.coeffs()[0].norm() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn reconstruct_reports_infeasible_profile() {
        // Rows with norms 1 and 2 cannot both be met by one state under
        // norm-preserving frames; the gap stalls well above tolerance.
        let dim = 3;
        let frames = FrameSet::new(vec![
            BasisFrame::standard(dim).unwrap(),
            random_unitary_frame("rotated", dim, 9),
        ])
        .unwrap();
        let unit = 1.0 / (dim as f64).sqrt();
        let profile =
            MagnitudeProfile::new(vec![vec![unit; dim], vec![2.0 * unit; dim]], false).unwrap();
        let cfg = SolverConfig {
            restarts: 3,
            ..SolverConfig::default()
        };
        let rec = reconstruct(&frames, &profile, &cfg).unwrap();
        assert!(!rec.converged);
        assert!(rec.residual > 0.2, "residual {:.3e}", rec.residual);
    }

    #[test]
    fn two_frame_residual_history_is_monotone() {
        let (frames, _, profile) = planted_problem(16, 33);
        let cfg = SolverConfig {
            restarts: 1,
            max_iters: 300,
            tol: 1e-30,
            ..SolverConfig::default()
        };
        let rec = reconstruct(&frames, &profile, &cfg).unwrap();
        for pair in rec.residual_history.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12,
                "residual rose from {:.6e} to {:.6e}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn flat_profile_members_are_pairwise_certified() {
        let p = 7usize;
        let frames = FrameSet::new(vec![
            BasisFrame::standard(p).unwrap(),
            BasisFrame::cyclic_character(p).unwrap(),
        ])
        .unwrap();
        let members: Vec<StateVector> = (1..p as u64)
            .map(|a| {
                let g = gauss_state(&GaussStateSpec::new(p as u64, a).unwrap());
                g.scale(Complex64::new(1.0 / g.norm(), 0.0))
            })
            .collect();
        let profile = forward(&members[0], &frames).unwrap();
        let expected = (1.0 - 1.0 / p as f64).sqrt();
        for (i, x) in members.iter().enumerate() {
            assert!(
                residual(x, &frames, &profile).unwrap() <= 1e-12,
                "member {i}"
            );
            for (j, y) in members.iter().enumerate().skip(i + 1) {
                let d = projective_distance(x, y).unwrap();
                assert!(
                    (d - expected).abs() <= 1e-10,
                    "members {i},{j}: distance {d}"
                );
                let w = AmbiguityWitness {
                    x: x.clone(),
                    y: y.clone(),
                    profile: profile.clone(),
                    residual_x: 0.0,
                    residual_y: 0.0,
                    distance: d,
                };
                assert!(certify_witness(&w, &frames, 1e-10, 1e-2).unwrap());
            }
        }
    }

    #[test]
    fn hand_witness_in_dimension_two_certifies() {
        let frames = FrameSet::new(vec![BasisFrame::standard(2).unwrap()]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = StateVector::new(vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)]).unwrap();
        let y = StateVector::new(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]).unwrap();
        let profile = forward(&x, &frames).unwrap();
        let d = projective_distance(&x, &y).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(d > 0.49);
        let w = AmbiguityWitness {
            x: x.clone(),
            y: y.clone(),
            profile: profile.clone(),
            residual_x: 0.0,
            residual_y: 0.0,
            distance: d,
        };
        assert!(certify_witness(&w, &frames, 1e-12, 1e-2).unwrap());

        // A global phase is the same ray: distance 0 fails certification.
        let spun = x.scale(Complex64::from_polar(1.0, 1.3));
        let same_ray = AmbiguityWitness {
            x: x.clone(),
            y: spun,
            profile: profile.clone(),
            residual_x: 0.0,
            residual_y: 0.0,
            distance: 0.0,
        };
        assert!(!certify_witness(&same_ray, &frames, 1e-12, 1e-2).unwrap());

        // Violating one magnitude by 0.1 fails the residual check.
        let off =
            StateVector::new(vec![Complex64::new(s + 0.1, 0.0), Complex64::new(0.0, s)]).unwrap();
        let bad = AmbiguityWitness {
            x,
            y: off,
            profile,
            residual_x: 0.0,
            residual_y: 0.0,
            distance: 0.7,
        };
        assert!(!certify_witness(&bad, &frames, 1e-12, 1e-2).unwrap());
    }

    #[test]
    fn single_frame_search_finds_witnesses() {
        // With one basis any phase reassignment of the coefficients is a
        // solution, so random starts land on new rays almost surely.
        let frames = FrameSet::new(vec![BasisFrame::standard(2).unwrap()]).unwrap();
        let cfg = SolverConfig {
            restarts: 2,
            ..SolverConfig::default()
        };
        let witnesses = ambiguity_search(&frames, &cfg, 5).unwrap();
        assert!(!witnesses.is_empty());
        for w in &witnesses {
            assert!(certify_witness(w, &frames, cfg.tol, cfg.distinctness_threshold).unwrap());
            assert!(w.distance >= cfg.distinctness_threshold);
            assert!(w.residual_x <= cfg.tol && w.residual_y <= cfg.tol);
        }

        // Identical seeds reproduce the identical witness list.
        let again = ambiguity_search(&frames, &cfg, 5).unwrap();
        assert_eq!(witnesses.len(), again.len());
        for (a, b) in witnesses.iter().zip(&again) {
            assert_eq!(a.distance.to_bits(), b.distance.to_bits());
        }
    }

    #[test]
    fn generic_frame_triple_in_dimension_two_yields_no_witness() {
        let frames = FrameSet::new(vec![
            BasisFrame::standard(2).unwrap(),
            random_unitary_frame("generic-a", 2, 101),
            random_unitary_frame("generic-b", 2, 202),
        ])
        .unwrap();

        // Oracle sweep: scan the projective space of dimension-two states
        // (polar angle + relative phase) at ~1e−2 resolution around a
        // fixed plant; no distinct ray matches its profile.
        let mut rng = stream_rng(77, 0);
        let plant = random_state(2, &mut rng).unwrap();
        let profile = forward(&plant, &frames).unwrap();
        let steps_theta = 158;
        let steps_phi = 629;
        let mut near_misses = 0usize;
        for i in 0..=steps_theta {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / steps_theta as f64;
            for j in 0..steps_phi {
                let phi = std::f64::consts::TAU * j as f64 / steps_phi as f64;
                let y = StateVector::new(vec![
                    Complex64::new(theta.cos(), 0.0),
                    Complex64::from_polar(theta.sin(), phi),
                ])
                .unwrap();
                if residual(&y, &frames, &profile).unwrap() < 1e-3
                    && projective_distance(&plant, &y).unwrap() >= 0.05
                {
                    near_misses += 1;
                }
            }
        }
        assert_eq!(near_misses, 0, "sweep found a distinct near-solution");

        // The randomized search agrees: no witness at desk scale.
        let cfg = SolverConfig {
            seed: 77,
            restarts: 5,
            ..SolverConfig::default()
        };
        let witnesses = ambiguity_search(&frames, &cfg, 3).unwrap();
        assert!(witnesses.is_empty());
    }

    fn normalized_grid_state(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> GridFunction {
        sample_normalized(&f, grid).unwrap()
    }

    #[test]
    fn probe_classifies_self_conjugate_gaussian_as_input() {
        // The alternating iteration polarizes onto the Gaussian's ray but
        // the residual decays slowly once only tail phases are wrong, so
        // the convergence threshold sits at the measured plateau scale.
        let grid = GridSpec::new(1, 128, 8.0).unwrap();
        let psi = normalized_grid_state(grid, |x| Complex64::new((-0.5 * x * x).exp(), 0.0));
        let cfg = SolverConfig {
            restarts: 4,
            max_iters: 5000,
            tol: 1e-4,
            distinctness_threshold: 0.05,
            ..SolverConfig::default()
        };
        let report = conjecture_probe(&psi, &cfg).unwrap();
        assert!(report.converged > 0, "{report:?}");
        assert_eq!(report.matches_input, report.converged, "{report:?}");
        assert_eq!(report.other_flagged, 0, "{report:?}");
    }

    #[test]
    fn probe_sees_both_classes_for_chirped_gaussian() {
        let grid = GridSpec::new(1, 256, 10.0).unwrap();
        let psi = normalized_grid_state(grid, |x| {
            Complex64::from_polar((-0.5 * x * x).exp(), x - x * x)
        });
        let reflected = reflect_conjugate(&psi).unwrap();
        let d = projective_distance(
            &psi.to_state_vector().unwrap(),
            &reflected.to_state_vector().unwrap(),
        )
        .unwrap();
        assert!(d > 0.5, "input and reflect rays are distinct: {d}");

        let cfg = SolverConfig {
            restarts: 50,
            max_iters: 2000,
            tol: 1e-5,
            distinctness_threshold: 0.05,
            ..SolverConfig::default()
        };
        let report = conjecture_probe(&psi, &cfg).unwrap();
        assert!(report.matches_input >= 1, "{report:?}");
        assert!(report.matches_reflect >= 1, "{report:?}");
        assert_eq!(
            report.matches_input + report.matches_reflect,
            report.converged,
            "{report:?}"
        );
    }

    #[test]
    fn probe_never_reports_reflect_for_uneven_modulus() {
        let grid = GridSpec::new(1, 256, 10.0).unwrap();
        let psi = normalized_grid_state(grid, |x| {
            Complex64::from_polar((-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.5 * x * x)
        });
        // The reflection-conjugate is not a solution here: its momentum
        // magnitudes differ, so its residual is far above tolerance.
        let frames = FrameSet::new(vec![
            BasisFrame::standard(grid.len()).unwrap(),
            BasisFrame::grid_fourier(grid),
        ])
        .unwrap();
        let target = psi.to_state_vector().unwrap();
        let profile = forward(&target, &frames).unwrap();
        let reflected = reflect_conjugate(&psi).unwrap().to_state_vector().unwrap();
        let r1 = residual(&reflected, &frames, &profile).unwrap();
        assert!(r1 > 1.0, "reflect residual {r1:.3e}");

        let cfg = SolverConfig {
            restarts: 10,
            max_iters: 5000,
            tol: 2e-5,
            distinctness_threshold: 0.05,
            ..SolverConfig::default()
        };
        let report = conjecture_probe(&psi, &cfg).unwrap();
        assert!(report.converged > 0, "{report:?}");
        assert_eq!(report.matches_reflect, 0, "{report:?}");
        assert_eq!(report.other_flagged, 0, "{report:?}");
    }

    #[test]
    fn refined_probe_reports_no_counter_evidence_for_gaussian() {
        let grid = GridSpec::new(1, 64, 8.0).unwrap();
        let cfg = SolverConfig {
            restarts: 5,
            max_iters: 1000,
            ..SolverConfig::default()
        };
        let report =
            conjecture_probe_refined(|x| Complex64::new((-0.5 * x * x).exp(), 0.0), grid, &cfg)
                .unwrap();
        assert!(!report.counter_evidence, "{report:?}");
    }

    #[test]
    fn probe_rejects_unnormalized_or_multidimensional_input() {
        let grid = GridSpec::new(1, 64, 8.0).unwrap();
        let unnormalized =
            GridFunction::from_complex_fn(grid, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0))
                .unwrap();
        assert!(conjecture_probe(&unnormalized, &SolverConfig::default()).is_err());

        let grid2 = GridSpec::new(2, 16, 4.0).unwrap();
        let flat = sample_normalized(&|_x| Complex64::new(1.0, 0.0), grid2);
        // 2D sampler: build directly since sample_normalized is 1D-only in
        // its closure signature; construct the grid function by hand.
        drop(flat);
        let vals = vec![Complex64::new(1.0, 0.0); grid2.len()];
        let g2 = GridFunction::from_complex_values(grid2, vals).unwrap();
        let n = g2.norm_l2();
        let g2 = GridFunction::from_complex_values(
            grid2,
            g2.complex_values().iter().map(|v| v / n).collect(),
        )
        .unwrap();
        assert!(conjecture_probe(&g2, &SolverConfig::default()).is_err());
    }

    #[test]
    fn projection_keeps_phases_of_nonzero_coefficients() {
        let x = StateVector::new(vec![
            Complex64::from_polar(0.3, 1.1),
            Complex64::from_polar(0.9, -2.0),
        ])
        .unwrap();
        let frame = BasisFrame::standard(2).unwrap();
        let out = project_magnitudes(&x, &frame, &[0.5, 0.5]).unwrap();
        for (o, i) in out.coeffs().iter().zip(x.coeffs()) {
            assert!((o.norm() - 0.5).abs() < 1e-15);
            assert!((o.arg() - i.arg()).abs() < 1e-15);
        }
        // The overlap with the original stays positive — phases aligned.
        assert!(inner(&x, &out).unwrap().re > 0.0);
    }
}
