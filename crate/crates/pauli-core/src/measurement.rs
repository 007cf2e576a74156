//! The measurement model: which magnitudes of a state are observable.
//!
//! A [`BasisFrame`] is one orthonormal basis of `C^n` (up to a uniform
//! scaling in the analysis convention), and a [`FrameSet`] is the finite
//! family of frames an experiment measures against. Observing a state `x`
//! yields its [`MagnitudeProfile`]: the array `|⟨e_i^ν, x⟩|` over every
//! frame `ν` and index `i`, with all phase information discarded. Two states
//! with the same profile are indistinguishable by these measurements, and
//! the central question everywhere else in the crate is when that
//! indistinguishability collapses to a global phase.
//!
//! [`embedding_obstruction`] evaluates the counting inequality that rules
//! out a real-algebraic-geometry route to uniqueness: the real variety of
//! profile-preserving states is too high-dimensional to embed in the
//! measurement data once `n ≥ 9`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};
use crate::statespace::{
    cyclic_dft, cyclic_dft_inverse, neumaier_sum, GridFunction, GridSpec, StateVector,
};

/// Maximum entrywise deviation of `EᴴE` from the identity tolerated when
/// accepting an explicit matrix as an orthonormal frame.
pub const FRAME_ORTHONORMALITY_TOL: f64 = 1e-12;

/// Slack on `|‖x‖² − 1|` under which a state counts as normalised when
/// deciding the [`MagnitudeProfile::normalized`] flag.
pub const NORMALIZED_STATE_TOL: f64 = 1e-10;

/// One orthonormal basis of `C^n`, together with the analysis convention
/// (how coefficients are scaled) attached to it.
///
/// Every variant provides an exact analysis/synthesis pair: for all `x`,
/// `synthesize(analyze(x)) = x` up to roundoff. Analysis is always a uniform
/// scalar multiple of a unitary map, so magnitude constraints in coefficient
/// space pull back isometrically (up to that scalar) to state space.
#[derive(Debug, Clone)]
pub enum BasisFrame {
    /// The coordinate basis; coefficients are the entries themselves.
    Standard { dim: usize, label: String },
    /// An explicit orthonormal basis given by the columns of `matrix`;
    /// coefficients are `c = Eᴴx`.
    Unitary {
        matrix: DMatrix<Complex64>,
        label: String,
    },
    /// The character basis `X_j(m) = exp(2πi·jm/p)` of `C^p` with the full
    /// `1/p` weight on analysis, so `c_j = (1/p)Σ_m x(m)·conj(X_j(m))` and
    /// synthesis is the unweighted sum `x(m) = Σ_j c_j·X_j(m)`.
    CyclicCharacter { dim: usize, label: String },
    /// Entries read as samples on a centred spatial grid; coefficients are
    /// the samples of the discretised Fourier transform on the dual grid.
    GridFourier { spec: GridSpec, label: String },
}

impl BasisFrame {
    /// The coordinate basis of `C^dim`, labelled `"standard"`.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(PauliError::InvalidParameter(
                "frame dimension must be positive".into(),
            ));
        }
        Ok(Self::Standard {
            dim,
            label: "standard".into(),
        })
    }

    /// An explicit orthonormal basis from the columns of `matrix`.
    ///
    /// Rejects non-square input and any matrix whose columns fail
    /// orthonormality by more than [`FRAME_ORTHONORMALITY_TOL`] in any entry
    /// of `EᴴE − I`.
    pub fn unitary(label: &str, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(PauliError::InvalidParameter(format!(
                "frame matrix must be square and nonempty, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let gram = matrix.adjoint() * &matrix;
        let mut max_dev = 0.0f64;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                max_dev = max_dev.max((gram[(i, j)] - target).norm());
            }
        }
        if max_dev.is_nan() || max_dev > FRAME_ORTHONORMALITY_TOL {
            return Err(PauliError::NotOrthonormal {
                label: label.to_string(),
                max_dev,
            });
        }
        Ok(Self::Unitary {
            matrix,
            label: label.to_string(),
        })
    }

    /// The character basis of `C^dim`, labelled `"character"`. Requires
    /// `dim ≥ 2`.
    pub fn cyclic_character(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(PauliError::InvalidParameter(format!(
                "character basis needs dimension ≥ 2, got {dim}"
            )));
        }
        Ok(Self::CyclicCharacter {
            dim,
            label: "character".into(),
        })
    }

    /// The discretised Fourier transform on `spec`, labelled `"fourier"`.
    pub fn grid_fourier(spec: GridSpec) -> Self {
        Self::GridFourier {
            spec,
            label: "fourier".into(),
        }
    }

    /// Replaces the frame's label (labels must be unique within a
    /// [`FrameSet`]).
    pub fn with_label(mut self, new_label: &str) -> Self {
        match &mut self {
            Self::Standard { label, .. }
            | Self::Unitary { label, .. }
            | Self::CyclicCharacter { label, .. }
            | Self::GridFourier { label, .. } => *label = new_label.to_string(),
        }
        self
    }

    /// Dimension of the space the frame spans.
    pub fn dim(&self) -> usize {
        match self {
            Self::Standard { dim, .. } | Self::CyclicCharacter { dim, .. } => *dim,
            Self::Unitary { matrix, .. } => matrix.nrows(),
            Self::GridFourier { spec, .. } => spec.len(),
        }
    }

    /// The frame's label.
    pub fn label(&self) -> &str {
        match self {
            Self::Standard { label, .. }
            | Self::Unitary { label, .. }
            | Self::CyclicCharacter { label, .. }
            | Self::GridFourier { label, .. } => label,
        }
    }

    /// Whether analysis is exactly unitary (coefficient norms sum to the
    /// state norm), as opposed to a scaled unitary map.
    fn unit_normalized(&self) -> bool {
        matches!(self, Self::Standard { .. } | Self::Unitary { .. })
    }

    /// Expansion coefficients of `x` in this frame.
    pub fn analyze(&self, x: &StateVector) -> Result<StateVector> {
        self.check_dim(x.dim())?;
        match self {
            Self::Standard { .. } => Ok(x.clone()),
            Self::Unitary { matrix, .. } => {
                let v = nalgebra::DVector::from_column_slice(x.coeffs());
                let c = matrix.adjoint() * v;
                StateVector::new(c.iter().copied().collect())
            }
            Self::CyclicCharacter { .. } => cyclic_dft(x),
            Self::GridFourier { spec, .. } => {
                let g = GridFunction::from_complex_values(*spec, x.coeffs().to_vec())?;
                g.fourier()?.to_state_vector()
            }
        }
    }

    /// Reassembles a state from its expansion coefficients; the exact
    /// inverse of [`BasisFrame::analyze`].
    pub fn synthesize(&self, coeffs: &StateVector) -> Result<StateVector> {
        self.check_dim(coeffs.dim())?;
        match self {
            Self::Standard { .. } => Ok(coeffs.clone()),
            Self::Unitary { matrix, .. } => {
                let v = nalgebra::DVector::from_column_slice(coeffs.coeffs());
                let x = matrix * v;
                StateVector::new(x.iter().copied().collect())
            }
            Self::CyclicCharacter { .. } => cyclic_dft_inverse(coeffs),
            Self::GridFourier { spec, .. } => {
                let dual = GridSpec::new(spec.dims(), spec.points(), spec.momentum_extent())?;
                let g = GridFunction::from_complex_values(dual, coeffs.coeffs().to_vec())?;
                g.fourier_inverse()?.to_state_vector()
            }
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(PauliError::DimensionMismatch {
                expected: self.dim(),
                got,
            });
        }
        Ok(())
    }
}

/// The family of frames an experiment measures against: nonempty, all of
/// one dimension, with pairwise distinct labels.
#[derive(Debug, Clone)]
pub struct FrameSet {
    dim: usize,
    frames: Vec<BasisFrame>,
}

impl FrameSet {
    pub fn new(frames: Vec<BasisFrame>) -> Result<Self> {
        let first = frames.first().ok_or_else(|| {
            PauliError::InvalidParameter("a frame set needs at least one frame".into())
        })?;
        let dim = first.dim();
        for f in &frames {
            if f.dim() != dim {
                return Err(PauliError::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
        }
        for (i, f) in frames.iter().enumerate() {
            if frames[..i].iter().any(|g| g.label() == f.label()) {
                return Err(PauliError::InvalidParameter(format!(
                    "duplicate frame label {:?}",
                    f.label()
                )));
            }
        }
        Ok(Self { dim, frames })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of frames.
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frames(&self) -> &[BasisFrame] {
        &self.frames
    }

    /// True when every frame's analysis map is exactly unitary.
    fn all_unit_normalized(&self) -> bool {
        self.frames.iter().all(BasisFrame::unit_normalized)
    }
}

/// The observable data of a state: one row of coefficient magnitudes per
/// frame, phases discarded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagnitudeProfile {
    rows: Vec<Vec<f64>>,
    normalized: bool,
}

impl MagnitudeProfile {
    /// Builds a profile from raw rows. Every row must have the same length
    /// and every entry must be finite and nonnegative. `normalized` records
    /// whether the rows are known to come from a unit state measured in
    /// unitary frames (each row then sums, in squares, to 1).
    pub fn new(rows: Vec<Vec<f64>>, normalized: bool) -> Result<Self> {
        let first = rows.first().ok_or_else(|| {
            PauliError::InvalidParameter("a profile needs at least one row".into())
        })?;
        let dim = first.len();
        if dim == 0 {
            return Err(PauliError::InvalidParameter(
                "profile rows must be nonempty".into(),
            ));
        }
        for row in &rows {
            if row.len() != dim {
                return Err(PauliError::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() || v < 0.0 {
                    return Err(PauliError::InvalidParameter(format!(
                        "profile entries must be finite and nonnegative, got {v}"
                    )));
                }
            }
        }
        Ok(Self { rows, normalized })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, frame: usize) -> &[f64] {
        &self.rows[frame]
    }

    /// Number of frames the profile covers.
    pub fn num_frames(&self) -> usize {
        self.rows.len()
    }

    /// Length of each row.
    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    /// Whether the rows are certified to square-sum to 1.
    pub fn normalized(&self) -> bool {
        self.normalized
    }

    /// Largest entrywise absolute difference against another profile of the
    /// same shape.
    pub fn max_abs_dev(&self, other: &MagnitudeProfile) -> Result<f64> {
        if self.num_frames() != other.num_frames() {
            return Err(PauliError::DimensionMismatch {
                expected: self.num_frames(),
                got: other.num_frames(),
            });
        }
        if self.dim() != other.dim() {
            return Err(PauliError::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut dev = 0.0f64;
        for (a, b) in self.rows.iter().zip(&other.rows) {
            for (x, y) in a.iter().zip(b) {
                dev = dev.max((x - y).abs());
            }
        }
        Ok(dev)
    }
}

/// Measures `x` against every frame in `frames`: the forward map of the
/// reconstruction problem.
///
/// The result is flagged normalised exactly when `‖x‖² = 1` within
/// [`NORMALIZED_STATE_TOL`] and every frame is unit-normalised, which
/// guarantees each row square-sums to 1.
pub fn forward(x: &StateVector, frames: &FrameSet) -> Result<MagnitudeProfile> {
    if x.dim() != frames.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: frames.dim(),
            got: x.dim(),
        });
    }
    let mut rows = Vec::with_capacity(frames.len());
    for frame in frames.frames() {
        let coeffs = frame.analyze(x)?;
        rows.push(coeffs.coeffs().iter().map(|c| c.norm()).collect());
    }
    let normalized =
        (x.norm_sqr() - 1.0).abs() <= NORMALIZED_STATE_TOL && frames.all_unit_normalized();
    MagnitudeProfile::new(rows, normalized)
}

/// Root-sum-square mismatch between the measured magnitudes of `x` and a
/// target profile:
///
/// ```text
/// r(x) = sqrt( Σ_ν Σ_i ( |⟨e_i^ν, x⟩| − b_i^ν )² ).
/// ```
pub fn residual(x: &StateVector, frames: &FrameSet, profile: &MagnitudeProfile) -> Result<f64> {
    if profile.num_frames() != frames.len() {
        return Err(PauliError::DimensionMismatch {
            expected: frames.len(),
            got: profile.num_frames(),
        });
    }
    if profile.dim() != frames.dim() {
        return Err(PauliError::DimensionMismatch {
            expected: frames.dim(),
            got: profile.dim(),
        });
    }
    let mut terms = Vec::with_capacity(frames.len() * frames.dim());
    for (frame, row) in frames.frames().iter().zip(profile.rows()) {
        let coeffs = frame.analyze(x)?;
        for (c, &b) in coeffs.coeffs().iter().zip(row) {
            let d = c.norm() - b;
            terms.push(d * d);
        }
    }
    Ok(neumaier_sum(terms.into_iter()).max(0.0).sqrt())
}

/// Whether `x` reproduces `profile` with residual at most `tol`.
pub fn is_member(
    x: &StateVector,
    frames: &FrameSet,
    profile: &MagnitudeProfile,
    tol: f64,
) -> Result<bool> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(PauliError::InvalidParameter(format!(
            "membership tolerance must be positive and finite, got {tol}"
        )));
    }
    Ok(residual(x, frames, profile)? <= tol)
}

/// Number of ones in the binary expansion of `n`.
pub fn binary_ones(n: u64) -> u32 {
    n.count_ones()
}

/// Outcome of the dimension-count test of [`embedding_obstruction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCheck {
    pub n: u64,
    /// `3n − 1`: the dimension needed to embed the profile variety.
    pub lhs: u64,
    /// `4(n−1) − 2·binary_ones(n−1)`: the dimension available.
    pub rhs: u64,
    /// Whether the obstruction holds, i.e. `lhs > rhs`.
    pub holds: bool,
}

/// Evaluates the embedding obstruction for dimension `n ≥ 2`.
///
/// If magnitude profiles over three bases determined states uniquely, the
/// projective space of states would embed smoothly in the profile sphere
/// `S^{3n−1}`, and the non-embedding bound for projective spaces would force
/// the strict inequality `3n−1 > 4(n−1) − 2α(n−1)`, with `α` counting
/// binary ones. The inequality holds for `n ∈ {2, 3, 4, 6, 8}`, ties — and
/// therefore fails — at `n = 5` and `n = 7`, and fails outright for every
/// `n ≥ 9`: from nine dimensions on (and already at the two tie
/// dimensions) this argument rules out uniqueness.
pub fn embedding_obstruction(n: u64) -> Result<ObstructionCheck> {
    if n < 2 {
        return Err(PauliError::InvalidParameter(format!(
            "obstruction test needs n ≥ 2, got {n}"
        )));
    }
    let lhs = 3 * n - 1;
    let rhs = 4 * (n - 1) - 2 * u64::from(binary_ones(n - 1));
    Ok(ObstructionCheck {
        n,
        lhs,
        rhs,
        holds: lhs > rhs,
    })
}
