//! Sampled functions on centred Cartesian grids and their Fourier images.
//!
//! A [`GridSpec`] covers `[−L, L)^d` with `N` points per axis, `x_k =
//! (k − N/2)·Δ`, `Δ = 2L/N`, `N` even. The Fourier image lives on the dual
//! grid with spacing `Δp = π/L` and half-width `P = N·π/(2L)`.
//!
//! The transform follows the analysis kernel `e^{+ip·x}`:
//!
//! ```text
//! ψ̂(p) = (2π)^{−d/2} ∫ ψ(x) e^{+ip·x} dx,
//! ψ(x) = (2π)^{−d/2} ∫ ψ̂(p) e^{−ip·x} dp,
//! ```
//!
//! discretised with the rectangle rule and evaluated by an FFT with the
//! `(−1)^k` pre/post phases that re-centre both grids. With these weights
//! the discrete map is exactly unitary for the `Σ|·|²Δ^d` norms.
//!
//! Samples are stored in polar split form — one magnitude array and one
//! phase array — so magnitude data is first-class: constructions that copy
//! or share a modulus preserve it bit for bit, which rectangular re/im
//! storage cannot do (extracting `hypot(re, im)` loses the original bits).

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::{PauliError, Result};
use crate::statespace::{fft_cache, StateVector};

/// Geometry of a centred grid: `dims` axes (1 to 3), `points` samples per
/// axis (even), half-width `extent` per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dims: usize,
    points: usize,
    extent: f64,
}

impl GridSpec {
    pub fn new(dims: usize, points: usize, extent: f64) -> Result<Self> {
        if !(1..=3).contains(&dims) {
            return Err(PauliError::InvalidParameter(format!(
                "grid dimension must be 1, 2 or 3, got {dims}"
            )));
        }
        if points < 2 || !points.is_multiple_of(2) {
            return Err(PauliError::InvalidParameter(format!(
                "points per axis must be even and ≥ 2, got {points}"
            )));
        }
        if extent <= 0.0 || extent.is_nan() || extent.is_infinite() {
            return Err(PauliError::InvalidParameter(format!(
                "grid extent must be positive and finite, got {extent}"
            )));
        }
        Ok(Self {
            dims,
            points,
            extent,
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Total number of grid points, `N^d`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.points.pow(self.dims as u32)
    }

    /// Sample spacing `Δ = 2L/N`.
    pub fn step(&self) -> f64 {
        2.0 * self.extent / self.points as f64
    }

    /// Spacing of the dual grid, `Δp = π/L`.
    pub fn momentum_step(&self) -> f64 {
        std::f64::consts::PI / self.extent
    }

    /// Half-width of the dual grid, `P = N·π/(2L)`.
    pub fn momentum_extent(&self) -> f64 {
        self.points as f64 * std::f64::consts::PI / (2.0 * self.extent)
    }

    /// Coordinate along one axis: `x_k = (k − N/2)·Δ`. Exactly antisymmetric
    /// under `k → N − k`.
    pub fn axis_coord(&self, k: usize) -> f64 {
        (k as f64 - self.points as f64 / 2.0) * self.step()
    }

    /// Coordinates of the flattened (row-major) index `idx`.
    pub fn coords(&self, idx: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dims];
        let mut rest = idx;
        for axis in (0..self.dims).rev() {
            out[axis] = self.axis_coord(rest % self.points);
            rest /= self.points;
        }
        out
    }

    /// Index of the periodic reflection `x → −x` (axis-wise `k → (N−k) mod
    /// N`; the unpaired `k = 0` row maps to itself).
    pub fn mirror_index(&self, idx: usize) -> usize {
        let n = self.points;
        let mut rest = idx;
        let mut out = 0;
        let mut weight = 1;
        for _ in 0..self.dims {
            let k = rest % n;
            out += ((n - k) % n) * weight;
            rest /= n;
            weight *= n;
        }
        out
    }
}

/// A complex-valued function sampled on a [`GridSpec`], stored as magnitude
/// and phase arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    mags: Vec<f64>,
    phases: Vec<f64>,
}

impl GridFunction {
    /// Builds a grid function from explicit magnitude and phase arrays.
    pub fn from_polar_parts(spec: GridSpec, mags: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        if mags.len() != spec.len() || phases.len() != spec.len() {
            return Err(PauliError::DimensionMismatch {
                expected: spec.len(),
                got: mags.len().max(phases.len()),
            });
        }
        if mags.iter().any(|m| *m < 0.0 || !m.is_finite()) {
            return Err(PauliError::InvalidParameter(
                "grid magnitudes must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { spec, mags, phases })
    }

    /// Samples `f(x) = (magnitude, phase)` over the grid.
    pub fn from_polar_fn(spec: GridSpec, mut f: impl FnMut(&[f64]) -> (f64, f64)) -> Result<Self> {
        let mut mags = Vec::with_capacity(spec.len());
        let mut phases = Vec::with_capacity(spec.len());
        for idx in 0..spec.len() {
            let (m, ph) = f(&spec.coords(idx));
            mags.push(m);
            phases.push(ph);
        }
        Self::from_polar_parts(spec, mags, phases)
    }

    /// Samples a complex-valued closure over the grid.
    pub fn from_complex_fn(spec: GridSpec, mut f: impl FnMut(&[f64]) -> Complex64) -> Result<Self> {
        let values: Vec<Complex64> = (0..spec.len()).map(|idx| f(&spec.coords(idx))).collect();
        Self::from_complex_values(spec, values)
    }

    /// Wraps precomputed complex samples, splitting them into polar parts.
    pub fn from_complex_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(PauliError::DimensionMismatch {
                expected: spec.len(),
                got: values.len(),
            });
        }
        let mut mags = Vec::with_capacity(values.len());
        let mut phases = Vec::with_capacity(values.len());
        for v in &values {
            let m = v.norm();
            mags.push(m);
            phases.push(if m == 0.0 { 0.0 } else { v.arg() });
        }
        Self::from_polar_parts(spec, mags, phases)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Pointwise moduli `|ψ(x_k)|` — the stored magnitude array itself.
    pub fn magnitudes(&self) -> &[f64] {
        &self.mags
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn value(&self, idx: usize) -> Complex64 {
        Complex64::from_polar(self.mags[idx], self.phases[idx])
    }

    pub fn complex_values(&self) -> Vec<Complex64> {
        (0..self.mags.len()).map(|i| self.value(i)).collect()
    }

    /// Squared discrete `L²` norm, `Σ |ψ(x_k)|²·Δ^d`.
    pub fn norm_sqr(&self) -> f64 {
        let w = self.spec.step().powi(self.spec.dims as i32);
        self.mags.iter().map(|m| m * m).sum::<f64>() * w
    }

    pub fn norm_l2(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// The raw samples as a state vector in `C^{N^d}`.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        StateVector::new(self.complex_values())
    }

    /// Periodic parity image: value at `x` taken from `−x`.
    pub fn reflected(&self) -> Self {
        let len = self.spec.len();
        let mut mags = vec![0.0; len];
        let mut phases = vec![0.0; len];
        for idx in 0..len {
            let m = self.spec.mirror_index(idx);
            mags[idx] = self.mags[m];
            phases[idx] = self.phases[m];
        }
        Self {
            spec: self.spec,
            mags,
            phases,
        }
    }

    /// Fourier analysis `ψ ↦ ψ̂` with kernel `e^{+ip·x}`; the result lives on
    /// the dual grid (extent [`GridSpec::momentum_extent`]).
    pub fn fourier(&self) -> Result<GridFunction> {
        self.transform(FftDirection::Inverse)
    }

    /// Fourier synthesis with kernel `e^{−ip·x}`, the exact inverse of
    /// [`GridFunction::fourier`].
    pub fn fourier_inverse(&self) -> Result<GridFunction> {
        self.transform(FftDirection::Forward)
    }

    fn transform(&self, direction: FftDirection) -> Result<GridFunction> {
        let n = self.spec.points;
        let d = self.spec.dims;
        let mut buf = self.complex_values();
        apply_centering_signs(&mut buf, n, d);
        fft_all_axes(&mut buf, n, d, direction);
        apply_centering_signs(&mut buf, n, d);
        // Quadrature weight per axis, with the global sign (−1)^{N/2} left
        // over from re-centring both grids.
        let sign = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        let factor = (self.spec.step() / TAU.sqrt() * sign).powi(d as i32);
        for v in &mut buf {
            *v *= factor;
        }
        let out_spec = GridSpec::new(d, n, self.spec.momentum_extent())?;
        GridFunction::from_complex_values(out_spec, buf)
    }

    /// Writes one `x_1,…,x_d,re,im` row per grid point.
    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        for axis in 0..self.spec.dims {
            write!(w, "x{},", axis + 1)?;
        }
        writeln!(w, "re,im")?;
        for idx in 0..self.spec.len() {
            for x in self.spec.coords(idx) {
                write!(w, "{x},")?;
            }
            let v = self.value(idx);
            writeln!(w, "{},{}", v.re, v.im)?;
        }
        Ok(())
    }
}

/// Multiplies sample `k` by `(−1)^{k_1 + … + k_d}`.
fn apply_centering_signs(buf: &mut [Complex64], n: usize, dims: usize) {
    for (idx, v) in buf.iter_mut().enumerate() {
        let mut rest = idx;
        let mut parity = 0;
        for _ in 0..dims {
            parity ^= (rest % n) & 1;
            rest /= n;
        }
        if parity == 1 {
            *v = -*v;
        }
    }
}

/// Unnormalised FFT of length `n` along every axis of a row-major
/// `[n; dims]` array.
fn fft_all_axes(buf: &mut [Complex64], n: usize, dims: usize, direction: FftDirection) {
    let fft = fft_cache::plan(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    // Last axis is contiguous: transform all rows in place.
    fft.process_with_scratch(buf, &mut scratch);
    let mut lane = vec![Complex64::new(0.0, 0.0); n];
    for axis in (0..dims.saturating_sub(1)).rev() {
        let stride = n.pow((dims - 1 - axis) as u32);
        let block = stride * n;
        for base_block in (0..buf.len()).step_by(block) {
            for offset in 0..stride {
                let base = base_block + offset;
                for (t, slot) in lane.iter_mut().enumerate() {
                    *slot = buf[base + t * stride];
                }
                fft.process_with_scratch(&mut lane, &mut scratch);
                for (t, slot) in lane.iter().enumerate() {
                    buf[base + t * stride] = *slot;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_grid(spec: GridSpec, seed: u64) -> GridFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GridFunction::from_complex_fn(spec, |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap()
    }

    #[test]
    fn spec_rejects_bad_parameters() {
        assert!(GridSpec::new(0, 8, 1.0).is_err());
        assert!(GridSpec::new(4, 8, 1.0).is_err());
        assert!(GridSpec::new(1, 7, 1.0).is_err());
        assert!(GridSpec::new(1, 8, 0.0).is_err());
        assert!(GridSpec::new(1, 8, -2.0).is_err());
    }

    #[test]
    fn coordinates_are_exactly_antisymmetric() {
        let spec = GridSpec::new(1, 64, 5.0).unwrap();
        assert_eq!(spec.axis_coord(0), -5.0);
        for k in 1..64 {
            assert_eq!(spec.axis_coord(64 - k), -spec.axis_coord(k));
        }
    }

    #[test]
    fn mirror_index_is_an_involution() {
        let spec = GridSpec::new(3, 8, 2.0).unwrap();
        for idx in 0..spec.len() {
            assert_eq!(spec.mirror_index(spec.mirror_index(idx)), idx);
        }
        let g = random_grid(spec, 3);
        let twice = g.reflected().reflected();
        assert_eq!(g, twice);
    }

    #[test]
    fn standard_gaussian_is_a_fixed_point() {
        // ψ(x) = π^{−1/4} e^{−x²/2} transforms to itself.
        let spec = GridSpec::new(1, 1024, 12.0).unwrap();
        let amp = PI.powf(-0.25);
        let g = GridFunction::from_complex_fn(spec, |x| {
            Complex64::new(amp * (-x[0] * x[0] / 2.0).exp(), 0.0)
        })
        .unwrap();
        let hat = g.fourier().unwrap();
        let mut max_err: f64 = 0.0;
        for j in 0..spec.points() {
            let p = hat.spec().axis_coord(j);
            let expected = amp * (-p * p / 2.0).exp();
            max_err = max_err.max((hat.value(j) - Complex64::new(expected, 0.0)).norm());
        }
        assert!(max_err < 1e-8, "max error {max_err}");
    }

    #[test]
    fn separable_3d_gaussian_matches_closed_form() {
        let spec = GridSpec::new(3, 32, 6.0).unwrap();
        let amp = PI.powf(-0.75);
        let g = GridFunction::from_complex_fn(spec, |x| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            Complex64::new(amp * (-r2 / 2.0).exp(), 0.0)
        })
        .unwrap();
        let hat = g.fourier().unwrap();
        let mut max_err: f64 = 0.0;
        for idx in 0..spec.len() {
            let p = hat.spec().coords(idx);
            let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            let expected = amp * (-r2 / 2.0).exp();
            max_err = max_err.max((hat.value(idx) - Complex64::new(expected, 0.0)).norm());
        }
        assert!(max_err < 1e-7, "max error {max_err}");
    }

    #[test]
    fn phase_modulation_shifts_the_peak_to_minus_one() {
        // ψ(x) = e^{−x²/2} e^{ix}: under the e^{+ipx} analysis kernel the
        // image is e^{−(p+1)²/2}, peaked at p = −1. Checked against a dense
        // direct-quadrature oracle at 32 sample momenta.
        let spec = GridSpec::new(1, 1024, 12.0).unwrap();
        let g = GridFunction::from_complex_fn(spec, |x| {
            Complex64::from_polar((-x[0] * x[0] / 2.0).exp(), x[0])
        })
        .unwrap();
        let hat = g.fourier().unwrap();

        // Oracle: rectangle-rule quadrature on a grid 8× finer.
        let fine = GridSpec::new(1, 8192, 12.0).unwrap();
        let quadrature = |p: f64| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..fine.points() {
                let x = fine.axis_coord(k);
                acc += Complex64::from_polar((-x * x / 2.0).exp(), x + p * x);
            }
            acc * Complex64::new(fine.step() / TAU.sqrt(), 0.0)
        };

        let dp = hat.spec().step(); // momentum-grid spacing, = spec.momentum_step()
        let center = spec.points() / 2;
        let picks: Vec<usize> = (0..32).map(|t| center - 16 + t).collect();
        for &j in &picks {
            let p = hat.spec().axis_coord(j);
            let diff = (hat.value(j) - quadrature(p)).norm();
            assert!(diff < 1e-8, "quadrature mismatch {diff} at p = {p}");
        }

        let argmax = (0..spec.points())
            .max_by(|a, b| hat.magnitudes()[*a].total_cmp(&hat.magnitudes()[*b]))
            .unwrap();
        let p_peak = hat.spec().axis_coord(argmax);
        assert!(
            (p_peak + 1.0).abs() <= dp / 2.0 + 1e-12,
            "peak at {p_peak}, expected −1"
        );
    }

    #[test]
    fn transform_is_unitary_on_random_grids() {
        for (spec, seed) in [
            (GridSpec::new(1, 64, 3.0).unwrap(), 5),
            (GridSpec::new(2, 16, 2.0).unwrap(), 6),
            (GridSpec::new(3, 8, 1.5).unwrap(), 7),
        ] {
            let g = random_grid(spec, seed);
            let hat = g.fourier().unwrap();
            let rel = (hat.norm_l2() - g.norm_l2()).abs() / g.norm_l2();
            assert!(rel < 1e-10, "Parseval violated: {rel}");
        }
    }

    #[test]
    fn analysis_and_synthesis_invert_each_other() {
        let spec = GridSpec::new(2, 16, 2.5).unwrap();
        let g = random_grid(spec, 11);
        let back = g.fourier().unwrap().fourier_inverse().unwrap();
        assert_eq!(back.spec(), g.spec());
        let max_err = (0..spec.len())
            .map(|i| (back.value(i) - g.value(i)).norm())
            .fold(0.0f64, f64::max);
        assert!(max_err < 1e-12, "round trip error {max_err}");
    }

    #[test]
    fn double_transform_is_the_parity_map_and_order_is_four() {
        let spec = GridSpec::new(1, 128, 4.0).unwrap();
        let g = random_grid(spec, 13);
        let twice = g.fourier().unwrap().fourier().unwrap();
        let reflected = g.reflected();
        let max_err2 = (0..spec.len())
            .map(|i| (twice.value(i) - reflected.value(i)).norm())
            .fold(0.0f64, f64::max);
        assert!(max_err2 < 1e-8, "F² vs parity error {max_err2}");

        let four = twice.fourier().unwrap().fourier().unwrap();
        let max_err4 = (0..spec.len())
            .map(|i| (four.value(i) - g.value(i)).norm())
            .fold(0.0f64, f64::max);
        assert!(max_err4 < 1e-8, "F⁴ vs identity error {max_err4}");
    }

    #[test]
    fn csv_lists_one_row_per_point() {
        let spec = GridSpec::new(1, 4, 1.0).unwrap();
        let g = random_grid(spec, 17);
        let mut out = Vec::new();
        g.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("x1,re,im"));
    }
}
