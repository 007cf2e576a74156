//! Finite-dimensional state vectors and the projective geometry used to
//! compare them.
//!
//! States are points of complex projective space: two vectors that differ by
//! a nonzero scalar describe the same state. [`projective_distance`] and
//! [`canonical_phase`] are the two ways the crate quotients that scalar out.

mod dft;
pub(crate) mod fft_cache;
mod grid;

pub use dft::{cyclic_dft, cyclic_dft_inverse};
pub use grid::{GridFunction, GridSpec};

use num_complex::Complex64;

use crate::error::{PauliError, Result};

/// Magnitude below which a coefficient is ignored when picking the phase
/// pivot of [`canonical_phase`].
pub const PHASE_PIVOT_THRESHOLD: f64 = 1e-10;

/// Slack on `|‖x‖² − 1|` under which a vector with a real positive pivot is
/// considered already canonical and returned unchanged (bit for bit), making
/// [`canonical_phase`] exactly idempotent.
pub const CANONICAL_NORM_SLACK: f64 = 1e-13;

/// A vector in `C^n`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    coeffs: Vec<Complex64>,
}

impl StateVector {
    /// Wraps a coefficient vector. Errors on the empty vector.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(PauliError::InvalidParameter(
                "state vector must have dimension ≥ 1".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// Builds a vector from a coefficient function.
    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..dim).map(f).collect())
    }

    /// The `i`-th standard basis vector `e_i` in dimension `dim`.
    pub fn basis_vector(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(PauliError::InvalidParameter(format!(
                "basis index {i} out of range for dimension {dim}"
            )));
        }
        Self::from_fn(dim, |k| {
            if k == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Squared Euclidean norm `Σ |x_i|²`, accumulated with compensated
    /// summation so the result is accurate to a few ulps at any dimension.
    pub fn norm_sqr(&self) -> f64 {
        neumaier_sum(self.coeffs.iter().map(|c| c.norm_sqr()))
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Pointwise scaling `αx`.
    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * alpha).collect(),
        }
    }
}

/// Sums `it` with Neumaier's compensated scheme.
pub(crate) fn neumaier_sum(it: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in it {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Hermitian inner product `⟨x, y⟩ = Σ conj(x_i)·y_i` (antilinear in the
/// first argument). Errors on a dimension mismatch.
pub fn inner(x: &StateVector, y: &StateVector) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(x.coeffs
        .iter()
        .zip(&y.coeffs)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Distance between the states spanned by `x` and `y`:
/// `sqrt(1 − |⟨x,y⟩|² / (‖x‖²‖y‖²))`, clamped into `[0, 1]` against
/// rounding. Vanishes exactly when the vectors are proportional; errors if
/// either vector is zero.
pub fn projective_distance(x: &StateVector, y: &StateVector) -> Result<f64> {
    let nx = x.norm_sqr();
    let ny = y.norm_sqr();
    if nx == 0.0 || ny == 0.0 {
        return Err(PauliError::ZeroVector);
    }
    let overlap = inner(x, y)?.norm_sqr();
    let d_sqr = 1.0 - overlap / (nx * ny);
    Ok(d_sqr.clamp(0.0, 1.0).sqrt())
}

/// Canonical representative of the projective class of `x`: the vector is
/// scaled to unit norm and the first coefficient of magnitude above
/// [`PHASE_PIVOT_THRESHOLD`] (relative to the norm) is made real and
/// positive.
///
/// The map is exactly idempotent: an input that is already canonical up to
/// [`CANONICAL_NORM_SLACK`] is returned unchanged, bit for bit. Errors if no
/// coefficient clears the pivot threshold.
pub fn canonical_phase(x: &StateVector) -> Result<StateVector> {
    let norm_sqr = x.norm_sqr();
    let norm = norm_sqr.sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(PauliError::ZeroVector);
    }
    let pivot_idx = x
        .coeffs
        .iter()
        .position(|c| c.norm() > PHASE_PIVOT_THRESHOLD * norm)
        .ok_or(PauliError::ZeroVector)?;
    let pivot = x.coeffs[pivot_idx];

    // Already canonical: unit norm within slack and a real positive pivot.
    if (norm_sqr - 1.0).abs() <= CANONICAL_NORM_SLACK && pivot.im == 0.0 && pivot.re > 0.0 {
        return Ok(x.clone());
    }

    let scale = 1.0 / norm;
    let w = pivot.conj() / pivot.norm() * scale;
    let mut coeffs: Vec<Complex64> = x.coeffs.iter().map(|c| c * w).collect();
    // Write the pivot through the real closed form so its imaginary part is
    // exactly zero; the generic complex product leaves ±1 ulp of residue.
    coeffs[pivot_idx] = Complex64::new(pivot.norm() * scale, 0.0);
    StateVector::new(coeffs)
}
