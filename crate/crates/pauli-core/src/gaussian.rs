//! Closed-form Gaussian theory: exact Fourier transforms of Gaussian
//! exponentials, the rescaling identities, and enumeration of every
//! Gaussian state compatible with a pair of Gaussian magnitude profiles.
//!
//! For `ψ(x) = a·exp(−½xᵀAx)` with `A = A₁ + iA₂`, `A₁ ≻ 0`, the transform
//! is again Gaussian with matrix `B = A⁻¹`; working in coordinates where
//! `A₁` is the identity (a congruence `CᵀA₁C = I`) reduces everything to
//! the eigenvalues `λ_j` of the transformed `A₂`. Given magnitude data
//! `μ_j ∈ (0, 1]` the full solution set is `A₂ = σᵀDσ` with
//! `D = diag(±λ_j)`, `λ_j = sqrt((1−μ_j²)/μ_j²)`, and `σ` orthogonal
//! commuting with `B₁` — finitely many sign orbits, each a single point
//! unless some `μ` value repeats.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{PauliError, Result};
use crate::statespace::{GridFunction, GridSpec};

/// Maximum entrywise asymmetry `|M − Mᵀ|` tolerated for input matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Tolerance of the closed-form identity checks (scaling identities and
/// solution verification).
pub const GAUSSIAN_CHECK_TOL: f64 = 1e-10;

/// Cap on the number of free sign choices enumerated by
/// [`solve_gaussian_pauli`] (2^k representatives).
pub const MAX_SIGN_CHOICES: usize = 16;

fn check_symmetric(m: &DMatrix<f64>, name: &str) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(PauliError::InvalidParameter(format!(
            "{name} must be square and nonempty, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = (m - m.transpose()).abs().max();
    if dev.is_nan() || dev > SYMMETRY_TOL {
        return Err(PauliError::MatrixConstraint(format!(
            "{name} is not symmetric: max |M − Mᵀ| = {dev:.3e}"
        )));
    }
    Ok(())
}

/// A Gaussian exponential `ψ(x) = a·exp(−½xᵀ(A₁ + iA₂)x)` with positive-
/// definite real part.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    amplitude: Complex64,
    a1: DMatrix<f64>,
    a2: DMatrix<f64>,
}

impl GaussianState {
    /// Requires `a ≠ 0`, both matrices symmetric within [`SYMMETRY_TOL`],
    /// and `A₁` positive definite.
    pub fn new(amplitude: Complex64, a1: DMatrix<f64>, a2: DMatrix<f64>) -> Result<Self> {
        if amplitude == Complex64::new(0.0, 0.0) || !amplitude.is_finite() {
            return Err(PauliError::InvalidParameter(format!(
                "amplitude must be nonzero and finite, got {amplitude}"
            )));
        }
        check_symmetric(&a1, "A1")?;
        check_symmetric(&a2, "A2")?;
        if a1.nrows() != a2.nrows() {
            return Err(PauliError::DimensionMismatch {
                expected: a1.nrows(),
                got: a2.nrows(),
            });
        }
        // Positive definiteness is what congruence reduction needs; check it
        // here so constructors fail early with the offending eigenvalue.
        congruence_reduce(&a1)?;
        Ok(Self { amplitude, a1, a2 })
    }

    /// The unit-norm standard Gaussian `π^{−l/4}·exp(−½xᵀx)`.
    pub fn standard(l: usize) -> Result<Self> {
        let a = std::f64::consts::PI.powf(-(l as f64) / 4.0);
        Self::new(
            Complex64::new(a, 0.0),
            DMatrix::identity(l, l),
            DMatrix::zeros(l, l),
        )
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn a1(&self) -> &DMatrix<f64> {
        &self.a1
    }

    pub fn a2(&self) -> &DMatrix<f64> {
        &self.a2
    }

    /// Number of variables `l`.
    pub fn dim(&self) -> usize {
        self.a1.nrows()
    }

    /// Closed-form `L²` norm: `‖ψ‖ = |a|·π^{l/4}·det(A₁)^{−1/4}`.
    pub fn norm(&self) -> f64 {
        let l = self.dim() as f64;
        self.amplitude.norm() * std::f64::consts::PI.powf(l / 4.0)
            / self.a1.determinant().powf(0.25)
    }

    /// Samples the state on a grid of matching dimension.
    pub fn sample(&self, grid: GridSpec) -> Result<GridFunction> {
        if grid.dims() != self.dim() {
            return Err(PauliError::DimensionMismatch {
                expected: self.dim(),
                got: grid.dims(),
            });
        }
        let mag_a = self.amplitude.norm();
        let arg_a = self.amplitude.arg();
        GridFunction::from_polar_fn(grid, |x| {
            let x = DVector::from_column_slice(x);
            let q1 = (&self.a1 * &x).dot(&x);
            let q2 = (&self.a2 * &x).dot(&x);
            (mag_a * (-0.5 * q1).exp(), arg_a - 0.5 * q2)
        })
    }
}

/// A real invertible `C` with `CᵀA₁C = I`, computed from the Cholesky
/// factorisation `A₁ = LLᵀ` as `C = L⁻ᵀ` (so `C = I` exactly when
/// `A₁ = I`, and diagonal inputs give exact diagonal scalings).
pub fn congruence_reduce(a1: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_symmetric(a1, "A1")?;
    match a1.clone().cholesky() {
        Some(chol) => {
            let lt = chol.l().transpose();
            lt.try_inverse().ok_or(PauliError::SingularMatrix)
        }
        None => {
            let min_eig = a1
                .clone()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            Err(PauliError::NotPositiveDefinite {
                eigenvalue: min_eig,
            })
        }
    }
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|v| Complex64::new(v, 0.0))
}

/// The exact Fourier transform of a Gaussian state: again Gaussian with
/// matrix `B = A⁻¹` and amplitude `â = a·|det C|·Π(1+iλ_j)^{−1/2}`.
///
/// `C` is the congruence with `CᵀA₁C = I` and `λ_j` are the eigenvalues of
/// `CᵀA₂C`; each square root takes the branch with positive real part
/// (legitimate since `Re(1+iλ) = 1 > 0`), which is the analytic
/// continuation of the real-`A` Gaussian integral.
pub fn gaussian_fourier(g: &GaussianState) -> Result<GaussianState> {
    let c = congruence_reduce(&g.a1)?;
    let a2_tilde = c.transpose() * &g.a2 * &c;
    let a2_tilde = (&a2_tilde + a2_tilde.transpose()) * 0.5;
    let eig = a2_tilde.symmetric_eigen();
    let cq = to_complex(&(&c * &eig.eigenvectors));
    let inv_diag = DMatrix::from_fn(g.dim(), g.dim(), |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0) / Complex64::new(1.0, eig.eigenvalues[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let b = &cq * inv_diag * cq.transpose();
    let b = (&b + b.transpose()) * Complex64::new(0.5, 0.0);
    let b1 = b.map(|z| z.re);
    let b2 = b.map(|z| z.im);
    let mut amplitude = g.amplitude * Complex64::new(c.determinant().abs(), 0.0);
    for &lambda in eig.eigenvalues.iter() {
        amplitude *= Complex64::new(1.0, lambda).powf(-0.5);
    }
    GaussianState::new(amplitude, b1, b2)
}

/// Deviations of the two rescaling identities for `ψ_C(x) = ψ(Cx)`:
/// `ψ̂_C(p) = |det C|⁻¹·ψ̂((C⁻¹)ᵀp)` and `‖ψ_C‖ = |det C|^{−1/2}·‖ψ‖`,
/// evaluated entirely in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingLemmaReport {
    /// Max relative deviation between the two sides of the transform
    /// identity (amplitude and matrix).
    pub transform_dev: f64,
    /// Relative deviation of the norm identity.
    pub norm_dev: f64,
    /// Both deviations ≤ [`GAUSSIAN_CHECK_TOL`].
    pub pass: bool,
}

/// Checks the rescaling identities for `g` and an invertible `C`.
pub fn scaling_lemma_check(g: &GaussianState, c: &DMatrix<f64>) -> Result<ScalingLemmaReport> {
    let l = g.dim();
    if c.nrows() != l || c.ncols() != l {
        return Err(PauliError::DimensionMismatch {
            expected: l,
            got: c.nrows(),
        });
    }
    let det = c.determinant();
    if det == 0.0 || !det.is_finite() {
        return Err(PauliError::SingularMatrix);
    }
    let c_inv = c.clone().try_inverse().ok_or(PauliError::SingularMatrix)?;

    // ψ_C has matrix CᵀAC and the same amplitude.
    let scaled = GaussianState::new(
        g.amplitude,
        c.transpose() * &g.a1 * c,
        c.transpose() * &g.a2 * c,
    )?;
    let lhs = gaussian_fourier(&scaled)?;

    // |det C|⁻¹·ψ̂((C⁻¹)ᵀp) has matrix C⁻¹·B·C⁻ᵀ and amplitude â/|det C|.
    let hat = gaussian_fourier(g)?;
    let rhs_amplitude = hat.amplitude / det.abs();
    let rhs_b1 = &c_inv * &hat.a1 * c_inv.transpose();
    let rhs_b2 = &c_inv * &hat.a2 * c_inv.transpose();

    let amp_dev = (lhs.amplitude - rhs_amplitude).norm() / rhs_amplitude.norm();
    let scale = rhs_b1.abs().max().max(rhs_b2.abs().max());
    let matrix_dev = ((&lhs.a1 - &rhs_b1).abs().max()).max((&lhs.a2 - &rhs_b2).abs().max()) / scale;
    let transform_dev = amp_dev.max(matrix_dev);

    let norm_lhs = scaled.norm();
    let norm_rhs = det.abs().powf(-0.5) * g.norm();
    let norm_dev = (norm_lhs - norm_rhs).abs() / norm_rhs;

    Ok(ScalingLemmaReport {
        transform_dev,
        norm_dev,
        pass: transform_dev <= GAUSSIAN_CHECK_TOL && norm_dev <= GAUSSIAN_CHECK_TOL,
    })
}

/// Gaussian magnitude data: `|ψ| = π^{−l/2}exp(−½xᵀx)` as a density and
/// `|ψ̂|² ∝ b·exp(−½pᵀB₁p)` with `B₁ = diag(μ₁², …, μ_l²)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianMagnitudeData {
    mu: Vec<f64>,
    scale: f64,
}

impl GaussianMagnitudeData {
    /// Requires every `μ_j ∈ (0, 1]`; the amplitude scale defaults to the
    /// Parseval-consistent `b = Π μ_j`.
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(PauliError::InvalidParameter(
                "magnitude data needs at least one direction".into(),
            ));
        }
        for &m in &mu {
            if !(m > 0.0 && m <= 1.0) {
                return Err(PauliError::InvalidParameter(format!(
                    "every μ must lie in (0, 1], got {m}"
                )));
            }
        }
        let scale = mu.iter().product();
        Ok(Self { mu, scale })
    }

    /// Overrides the amplitude scale (must be positive and finite).
    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(PauliError::InvalidParameter(format!(
                "amplitude scale must be positive and finite, got {scale}"
            )));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// The amplitude scale `b` (squared transform magnitude ratio).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }
}

/// A maximal set of indices sharing one `μ` value, with the dimension of
/// the orthogonal group acting on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutantBlock {
    pub indices: Vec<usize>,
    pub mu: f64,
    pub lambda: f64,
    /// `dim O(s) = s(s−1)/2` for a block of size `s`.
    pub group_dim: usize,
}

/// All diagonal solutions of `A₂² = (I − B₁)B₁⁻¹` together with the
/// structure of their orbits under commuting orthogonal conjugation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSet {
    pub mu: Vec<f64>,
    /// Nonnegative roots `λ_j = sqrt((1−μ_j²)/μ_j²)`.
    pub lambda: Vec<f64>,
    /// One sign per index: `−1`/`+1`, with `+1` fixed wherever `λ_j = 0`.
    pub sign_patterns: Vec<Vec<i8>>,
    /// Diagonals of the representative matrices `D = diag(±λ_j)`.
    pub representatives: Vec<Vec<f64>>,
    pub blocks: Vec<CommutantBlock>,
    /// True when every orbit is a single point: each block is 1×1 or has
    /// `λ = 0`, so no continuous commutant direction survives.
    pub orbit_is_point: bool,
}

impl OrbitSet {
    /// Materialises representative `i` as a full matrix.
    pub fn representative_matrix(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.representatives[i]))
    }
}

/// Enumerates every sign representative `D = diag(±λ_j)` for the given
/// magnitude data, grouping repeated `μ` values into commutant blocks.
///
/// A zero `λ_j` (from `μ_j = 1`) admits only one sign, so the count is
/// `2^k` with `k = #{j : μ_j < 1}` (capped at [`MAX_SIGN_CHOICES`]).
pub fn solve_gaussian_pauli(data: &GaussianMagnitudeData) -> Result<OrbitSet> {
    let mu = data.mu().to_vec();
    let l = mu.len();
    let lambda: Vec<f64> = mu
        .iter()
        .map(|&m| ((1.0 - m * m) / (m * m)).sqrt())
        .collect();
    let free: Vec<usize> = (0..l).filter(|&j| lambda[j] > 0.0).collect();
    let k = free.len();
    if k > MAX_SIGN_CHOICES {
        return Err(PauliError::InvalidParameter(format!(
            "{k} sign choices would enumerate 2^{k} representatives; the cap is 2^{MAX_SIGN_CHOICES}"
        )));
    }

    let mut sign_patterns = Vec::with_capacity(1 << k);
    let mut representatives = Vec::with_capacity(1 << k);
    for mask in 0..(1usize << k) {
        let mut signs = vec![1i8; l];
        for (bit, &j) in free.iter().enumerate() {
            if (mask >> bit) & 1 == 1 {
                signs[j] = -1;
            }
        }
        let diag: Vec<f64> = (0..l).map(|j| f64::from(signs[j]) * lambda[j]).collect();
        sign_patterns.push(signs);
        representatives.push(diag);
    }

    // Group indices by exact μ value, in first-occurrence order.
    let mut blocks: Vec<CommutantBlock> = Vec::new();
    for (j, &m) in mu.iter().enumerate() {
        if let Some(block) = blocks.iter_mut().find(|b| b.mu == m) {
            block.indices.push(j);
        } else {
            blocks.push(CommutantBlock {
                indices: vec![j],
                mu: m,
                lambda: lambda[j],
                group_dim: 0,
            });
        }
    }
    for block in &mut blocks {
        let s = block.indices.len();
        block.group_dim = s * (s - 1) / 2;
    }
    let orbit_is_point = blocks
        .iter()
        .all(|b| b.indices.len() == 1 || b.lambda == 0.0);

    Ok(OrbitSet {
        mu,
        lambda,
        sign_patterns,
        representatives,
        blocks,
        orbit_is_point,
    })
}

/// Deviations of a candidate `A₂` from reproducing the magnitude data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolutionCheck {
    /// Max entrywise deviation of the transform's `B₁` from `diag(μ_j²)`.
    pub matrix_dev: f64,
    /// Deviation of the squared amplitude ratio `(|â|/|a|)²` from `b`.
    pub amplitude_dev: f64,
    pub pass: bool,
}

/// Evaluates how well `A₂` solves the reconstruction: builds
/// `ψ = exp(−½xᵀ(I + iA₂)x)`, transforms in closed form, and compares
/// `B₁` against `diag(μ_j²)` and the squared magnitude ratio against `b`.
///
/// The amplitude comparison is of intensities: `(|â|/|a|)² = Π μ_j` for a
/// true solution, which is the Parseval-consistent reading of the scale.
pub fn check_gaussian_solution(
    a2: &DMatrix<f64>,
    data: &GaussianMagnitudeData,
) -> Result<SolutionCheck> {
    let l = data.dim();
    if a2.nrows() != l || a2.ncols() != l {
        return Err(PauliError::DimensionMismatch {
            expected: l,
            got: a2.nrows(),
        });
    }
    let g = GaussianState::new(
        Complex64::new(1.0, 0.0),
        DMatrix::identity(l, l),
        a2.clone(),
    )?;
    let hat = gaussian_fourier(&g)?;
    let target_b1 = DMatrix::from_fn(l, l, |i, j| {
        if i == j {
            data.mu()[i] * data.mu()[i]
        } else {
            0.0
        }
    });
    let matrix_dev = (hat.a1() - target_b1).abs().max();
    let ratio_sq = hat.amplitude().norm_sqr();
    let amplitude_dev = (ratio_sq - data.scale()).abs();
    Ok(SolutionCheck {
        matrix_dev,
        amplitude_dev,
        pass: matrix_dev <= GAUSSIAN_CHECK_TOL && amplitude_dev <= GAUSSIAN_CHECK_TOL,
    })
}

/// Whether `A₂` reproduces the magnitude data within
/// [`GAUSSIAN_CHECK_TOL`]. See [`check_gaussian_solution`].
pub fn verify_gaussian_solution(a2: &DMatrix<f64>, data: &GaussianMagnitudeData) -> Result<bool> {
    Ok(check_gaussian_solution(a2, data)?.pass)
}
