//! Explicit families of states that share a magnitude profile without
//! sharing a phase ray.
//!
//! Four constructions, each paired with a certifier that checks the claimed
//! magnitude coincidences on concrete grids:
//!
//! * quadratic-character ("Gauss") states over `Z/pZ`, all flat in both the
//!   point basis and the character basis — a `(p−1)`-fold ambiguity;
//! * the chirp `e^{iαx²}`, flat in position and (up to truncation ringing)
//!   flat in momentum;
//! * reflect-conjugation `ψ₁(x) = |ψ(x)|·e^{−i·arg ψ(−x)}`, which preserves
//!   position magnitudes bitwise and, for even `|ψ|`, momentum magnitudes
//!   up to roundoff;
//! * rotated three-dimensional Gaussians `ψ_σ(x) = ψ₀(σx)` with a radial
//!   modulus, and spherical conjugate pairs — continuum families of
//!   profile-sharing states.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{PauliError, Result};
use crate::statespace::{cyclic_dft, projective_distance, GridFunction, GridSpec, StateVector};

/// Magnitudes below this are treated as zero when a phase must be read off
/// a sample (the phase of a vanishing sample is meaningless).
pub const PHASE_READ_FLOOR: f64 = 1e-300;

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Parameters of a quadratic-character state over `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussStateSpec {
    p: u64,
    a: u64,
}

impl GaussStateSpec {
    /// Requires `p` an odd prime and `0 ≤ a ≤ p−1`.
    pub fn new(p: u64, a: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(PauliError::NotOddPrime(p));
        }
        if a >= p {
            return Err(PauliError::InvalidParameter(format!(
                "character index a must lie in [0, p−1], got a = {a}, p = {p}"
            )));
        }
        Ok(Self { p, a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// The quadratic-character state `ψ_a(m) = exp(2πi·a·m²/p)`.
///
/// The exponent is reduced mod `p` in integer arithmetic before any
/// floating-point enters, so equal residues give bitwise-equal entries.
pub fn gauss_state(spec: &GaussStateSpec) -> StateVector {
    let GaussStateSpec { p, a } = *spec;
    let coeffs = (0..p)
        .map(|m| {
            let k = (a * ((m * m) % p)) % p;
            Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / p as f64)
        })
        .collect();
    StateVector::new(coeffs).expect("p ≥ 3 entries")
}

/// Flatness certificate for the quadratic-character family in dimension `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatnessReport {
    /// Max over `a ∈ [1, p−1]` and `j` of `| |ψ_a(j)| − 1 |`.
    pub max_dev_delta_basis: f64,
    /// Max over `a ∈ [1, p−1]` and `j` of `| |c_aj| − 1/√p |`, with `c`
    /// the character-basis coefficients.
    pub max_dev_char_basis: f64,
    pub pass: bool,
}

/// Checks that every nonzero quadratic-character state is flat in both
/// bases: point-basis magnitudes all 1 and character-basis magnitudes all
/// `1/√p`. The `a = 0` state is excluded — it is the constant function,
/// whose character expansion is a point mass.
pub fn verify_flat_profiles(p: u64, tol: f64) -> Result<FlatnessReport> {
    if !is_odd_prime(p) {
        return Err(PauliError::NotOddPrime(p));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(PauliError::InvalidParameter(format!(
            "flatness tolerance must be positive and finite, got {tol}"
        )));
    }
    let flat = 1.0 / (p as f64).sqrt();
    let mut dev_delta = 0.0f64;
    let mut dev_char = 0.0f64;
    for a in 1..p {
        let psi = gauss_state(&GaussStateSpec::new(p, a)?);
        for c in psi.coeffs() {
            dev_delta = dev_delta.max((c.norm() - 1.0).abs());
        }
        let coeffs = cyclic_dft(&psi)?;
        for c in coeffs.coeffs() {
            dev_char = dev_char.max((c.norm() - flat).abs());
        }
    }
    Ok(FlatnessReport {
        max_dev_delta_basis: dev_delta,
        max_dev_char_basis: dev_char,
        pass: dev_delta <= tol && dev_char <= tol,
    })
}

/// Parameters of the chirp `f_α(x) = exp(iαx²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChirpSpec {
    alpha: f64,
}

impl ChirpSpec {
    /// Requires `α ≠ 0` and finite.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(PauliError::InvalidParameter(format!(
                "chirp rate must be nonzero and finite, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Samples the chirp `exp(iαx²)` on a one-dimensional grid. Every sample
/// has magnitude exactly 1.
pub fn chirp(spec: &ChirpSpec, grid: GridSpec) -> Result<GridFunction> {
    if grid.dims() != 1 {
        return Err(PauliError::InvalidParameter(format!(
            "chirp is a one-dimensional family, got a {}-d grid",
            grid.dims()
        )));
    }
    let alpha = spec.alpha;
    GridFunction::from_polar_fn(grid, |x| (1.0, alpha * x[0] * x[0]))
}

/// The constant modulus `(2|α|)^{−1/2}` of the chirp's exact Fourier
/// transform `f̂_α(p) = (2αi)^{−1/2}·exp(−ip²/4α)`.
pub fn chirp_closed_form_magnitude(spec: &ChirpSpec) -> f64 {
    1.0 / (2.0 * spec.alpha.abs()).sqrt()
}

/// Flat-band comparison of the truncated chirp's transform against the
/// closed-form constant modulus.
///
/// The chirp is not square-integrable, so truncation to `[−L, L]` is
/// unavoidable and leaves ringing near the band edges; the comparison is
/// therefore qualitative (tolerances of order 10%). The flat band is
/// `|p| ≤ |α|·L`: exactly the momenta whose stationary point
/// `x* = −p/(2α)` lies in the central half of the window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChirpBandReport {
    pub closed_form_magnitude: f64,
    /// Half-width `|α|·L` of the flat momentum band.
    pub band_halfwidth: f64,
    pub samples_in_band: usize,
    /// Max of `| |f̂(p)| − (2|α|)^{−1/2} | / (2|α|)^{−1/2}` over the band.
    pub max_rel_dev: f64,
    pub rel_tol: f64,
    pub pass: bool,
}

/// Measures how flat the truncated chirp's transform magnitude is across
/// the stationary-phase band. See [`ChirpBandReport`].
pub fn chirp_flat_band(spec: &ChirpSpec, grid: GridSpec, rel_tol: f64) -> Result<ChirpBandReport> {
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(PauliError::InvalidParameter(format!(
            "relative tolerance must be positive and finite, got {rel_tol}"
        )));
    }
    let f = chirp(spec, grid)?;
    let hat = f.fourier()?;
    let cf = chirp_closed_form_magnitude(spec);
    let band = spec.alpha.abs() * grid.extent();
    let mut max_rel_dev = 0.0f64;
    let mut samples_in_band = 0;
    for (j, &m) in hat.magnitudes().iter().enumerate() {
        let p = hat.spec().axis_coord(j);
        if p.abs() <= band {
            samples_in_band += 1;
            max_rel_dev = max_rel_dev.max((m - cf).abs() / cf);
        }
    }
    Ok(ChirpBandReport {
        closed_form_magnitude: cf,
        band_halfwidth: band,
        samples_in_band,
        max_rel_dev,
        rel_tol,
        pass: max_rel_dev <= rel_tol,
    })
}

/// The reflect-conjugation partner `ψ₁(x) = |g(x)|·exp(−i·arg g(−x))`.
///
/// Position magnitudes are copied bit for bit; phases are read at the
/// mirrored sample and negated, both exact operations, so applying the map
/// twice restores `g` exactly wherever the phase is meaningful. Samples
/// whose mirrored magnitude is below [`PHASE_READ_FLOOR`] get phase 0.
pub fn reflect_conjugate(g: &GridFunction) -> Result<GridFunction> {
    if g.spec().dims() != 1 {
        return Err(PauliError::InvalidParameter(format!(
            "reflect-conjugation is a one-dimensional construction, got a {}-d grid",
            g.spec().dims()
        )));
    }
    let mags = g.magnitudes().to_vec();
    let phases = (0..g.spec().len())
        .map(|k| {
            let m = g.spec().mirror_index(k);
            if g.magnitudes()[m] < PHASE_READ_FLOOR {
                0.0
            } else {
                -g.phases()[m]
            }
        })
        .collect();
    GridFunction::from_polar_parts(*g.spec(), mags, phases)
}

/// Parameters of the rotated-Gaussian pair
/// `ψ₀(x) = exp(−α₁|x|² − iα₂(x₁²+x₂²−x₃²))`, `ψ_σ(x) = ψ₀(σx)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KontsevichSpec {
    alpha1: f64,
    alpha2: f64,
    rotation: Matrix3<f64>,
}

/// Maximum entrywise deviation of `σᵀσ` from the identity tolerated for a
/// rotation matrix.
pub const ROTATION_ORTHOGONALITY_TOL: f64 = 1e-12;

impl KontsevichSpec {
    /// Requires `α₁ > 0`, `α₂ ≠ 0`, and `σᵀσ = I` within
    /// [`ROTATION_ORTHOGONALITY_TOL`] entrywise.
    pub fn new(alpha1: f64, alpha2: f64, rotation: Matrix3<f64>) -> Result<Self> {
        if !(alpha1 > 0.0 && alpha1.is_finite()) {
            return Err(PauliError::InvalidParameter(format!(
                "decay rate α₁ must be positive and finite, got {alpha1}"
            )));
        }
        if alpha2 == 0.0 || !alpha2.is_finite() {
            return Err(PauliError::InvalidParameter(format!(
                "phase rate α₂ must be nonzero and finite, got {alpha2}"
            )));
        }
        let gram = rotation.transpose() * rotation;
        let dev = (gram - Matrix3::identity()).abs().max();
        if dev.is_nan() || dev > ROTATION_ORTHOGONALITY_TOL {
            return Err(PauliError::MatrixConstraint(format!(
                "rotation is not orthogonal: max |σᵀσ − I| = {dev:.3e}"
            )));
        }
        Ok(Self {
            alpha1,
            alpha2,
            rotation,
        })
    }

    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    /// The quarter turn about the `x₁` axis, `(x₁,x₂,x₃) ↦ (x₁,−x₃,x₂)`.
    /// Its entries are exactly 0 and ±1, so it permutes grid points without
    /// roundoff.
    pub fn quarter_turn_about_x1() -> Matrix3<f64> {
        Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0)
    }
}

/// Samples the pair `(ψ₀, ψ_σ)` on a cubic grid, evaluating `ψ_σ` at
/// analytically rotated arguments (no grid interpolation).
///
/// The modulus `exp(−α₁|x|²)` is radial and `|σx| = |x|`, so both members'
/// magnitudes are computed from one shared expression in the unrotated
/// coordinates — making the position-magnitude equality exact on stored
/// data, not merely up to the roundoff a reassociated `|σx|²` sum would
/// introduce.
pub fn kontsevich_pair(
    spec: &KontsevichSpec,
    grid: GridSpec,
) -> Result<(GridFunction, GridFunction)> {
    if grid.dims() != 3 {
        return Err(PauliError::InvalidParameter(format!(
            "the rotated-Gaussian pair lives on a 3-d grid, got {}-d",
            grid.dims()
        )));
    }
    let n = grid.len();
    let mut mags = Vec::with_capacity(n);
    let mut phases0 = Vec::with_capacity(n);
    let mut phases_rot = Vec::with_capacity(n);
    let quad = |v: &Vector3<f64>| v[0] * v[0] + v[1] * v[1] - v[2] * v[2];
    for idx in 0..n {
        let c = grid.coords(idx);
        let x = Vector3::new(c[0], c[1], c[2]);
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        mags.push((-spec.alpha1 * r2).exp());
        phases0.push(-spec.alpha2 * quad(&x));
        let y = spec.rotation * x;
        phases_rot.push(-spec.alpha2 * quad(&y));
    }
    let g0 = GridFunction::from_polar_parts(grid, mags.clone(), phases0)?;
    let g_rot = GridFunction::from_polar_parts(grid, mags, phases_rot)?;
    Ok((g0, g_rot))
}

/// Samples the spherically symmetric state `ψ(x) = ψ₀(|x|)` and its
/// complex conjugate on a cubic grid.
///
/// The conjugate is formed in polar storage (same magnitudes, negated
/// phases), so the pair's position magnitudes coincide bitwise. `ψ₀` must
/// decay at the grid boundary (a Gaussian envelope at desk scale) for the
/// momentum comparison to be meaningful.
pub fn spherical_conjugate_pair<F>(
    radial: F,
    grid: GridSpec,
) -> Result<(GridFunction, GridFunction)>
where
    F: Fn(f64) -> Complex64,
{
    if grid.dims() != 3 {
        return Err(PauliError::InvalidParameter(format!(
            "the spherical pair lives on a 3-d grid, got {}-d",
            grid.dims()
        )));
    }
    let n = grid.len();
    let mut mags = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    for idx in 0..n {
        let c = grid.coords(idx);
        let r = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        let z = radial(r);
        let m = z.norm();
        mags.push(m);
        phases.push(if m == 0.0 { 0.0 } else { z.arg() });
    }
    let conj_phases = phases.iter().map(|p| -p).collect();
    let psi = GridFunction::from_polar_parts(grid, mags.clone(), phases)?;
    let psi_conj = GridFunction::from_polar_parts(grid, mags, conj_phases)?;
    Ok((psi, psi_conj))
}

/// How the momentum-side magnitudes of a pair are compared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MomentumTolerance {
    /// Max absolute deviation `| |ĝ₀| − |ĝ₁| | ≤ tol`.
    Absolute { tol: f64 },
    /// Max relative deviation ≤ `tol`, restricted to samples where the
    /// first member's transform magnitude exceeds `mask` times its maximum.
    RelativeMasked { tol: f64, mask: f64 },
}

/// Certificate that two grid functions share a magnitude profile in both
/// position and momentum while being projectively distinct.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairCertificate {
    /// Whether stored position magnitudes agree bit for bit.
    pub position_bitwise: bool,
    /// Momentum-side deviation under the requested tolerance semantics.
    pub momentum_dev: f64,
    pub momentum_ok: bool,
    /// Projective distance between the two members as states.
    pub projective_distance: f64,
    /// `position_bitwise && momentum_ok`.
    pub pass: bool,
}

/// Compares a pair's position magnitudes (bitwise), momentum magnitudes
/// (under `tol`), and projective distance.
pub fn certify_magnitude_pair(
    g0: &GridFunction,
    g1: &GridFunction,
    tol: MomentumTolerance,
) -> Result<PairCertificate> {
    if g0.spec() != g1.spec() {
        return Err(PauliError::InvalidParameter(
            "pair members live on different grids".into(),
        ));
    }
    let position_bitwise = g0
        .magnitudes()
        .iter()
        .zip(g1.magnitudes())
        .all(|(a, b)| a.to_bits() == b.to_bits());
    let hat0 = g0.fourier()?;
    let hat1 = g1.fourier()?;
    let (momentum_dev, momentum_ok) = match tol {
        MomentumTolerance::Absolute { tol } => {
            let dev = hat0
                .magnitudes()
                .iter()
                .zip(hat1.magnitudes())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            (dev, dev <= tol)
        }
        MomentumTolerance::RelativeMasked { tol, mask } => {
            let peak = hat0.magnitudes().iter().copied().fold(0.0f64, f64::max);
            let floor = mask * peak;
            let dev = hat0
                .magnitudes()
                .iter()
                .zip(hat1.magnitudes())
                .filter(|(a, _)| **a > floor)
                .map(|(a, b)| (a - b).abs() / a)
                .fold(0.0f64, f64::max);
            (dev, dev <= tol)
        }
    };
    let projective_distance = projective_distance(&g0.to_state_vector()?, &g1.to_state_vector()?)?;
    Ok(PairCertificate {
        position_bitwise,
        momentum_dev,
        momentum_ok,
        projective_distance,
        pass: position_bitwise && momentum_ok,
    })
}
