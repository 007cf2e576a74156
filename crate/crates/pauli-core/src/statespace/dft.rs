//! Cyclic discrete Fourier analysis against the character basis
//! `X_j(m) = exp(2πi·jm/p)` of `C^p`.
//!
//! The expansion convention carries the full `1/p` weight on analysis and
//! none on synthesis:
//!
//! ```text
//! c_j = (1/p) Σ_m f(m)·conj(X_j(m)),      f(m) = Σ_j c_j·X_j(m).
//! ```
//!
//! The pair is an exact inverse pair, but neither map is unitary: for a
//! unit vector `f`, `Σ_j |c_j|² = 1/p`.

use rustfft::FftDirection;

use crate::error::{PauliError, Result};
use crate::statespace::{fft_cache, StateVector};

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(PauliError::InvalidParameter(format!(
            "cyclic transform needs dimension ≥ 2, got {dim}"
        )));
    }
    Ok(())
}

/// Analysis: character coefficients `c_j = (1/p) Σ_m f(m)·conj(X_j(m))`.
pub fn cyclic_dft(f: &StateVector) -> Result<StateVector> {
    let p = f.dim();
    check_dim(p)?;
    let mut buf = f.coeffs().to_vec();
    fft_cache::plan(p, FftDirection::Forward).process(&mut buf);
    let w = 1.0 / p as f64;
    for c in &mut buf {
        *c *= w;
    }
    StateVector::new(buf)
}

/// Synthesis: `f(m) = Σ_j c_j·X_j(m)`, the exact inverse of [`cyclic_dft`].
pub fn cyclic_dft_inverse(c: &StateVector) -> Result<StateVector> {
    let p = c.dim();
    check_dim(p)?;
    let mut buf = c.coeffs().to_vec();
    fft_cache::plan(p, FftDirection::Inverse).process(&mut buf);
    StateVector::new(buf)
}
