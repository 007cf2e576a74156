//! Numerical toolkit for the Pauli state-reconstruction problem.
//!
//! The question studied here: if all we know about a complex state are the
//! *magnitudes* of its expansion coefficients in one or more fixed bases —
//! e.g. `|ψ(x)|` together with `|ψ̂(p)|` — is the state determined up to a
//! global phase, and if not, what does the ambiguity set look like?
//!
//! The crate is organised in five layers:
//!
//! * [`statespace`] — finite state vectors, projective geometry, the cyclic
//!   discrete Fourier transform, and sampled functions on centred grids with
//!   a unitary grid Fourier transform (analysis kernel `e^{+ipx}`).
//! * [`measurement`] — orthonormal frames, magnitude profiles `b_{iν} =
//!   |⟨e_{iν}, x⟩|`, membership residuals, and the counting obstruction that
//!   rules out three-basis uniqueness in dimensions ≥ 9.
//! * [`constructions`] — explicit ambiguity families: quadratic Gauss states
//!   that share a flat two-basis profile, constant-magnitude chirps,
//!   reflection–conjugation partners, and a rotation-parameterised family of
//!   3-D Gaussians with identical position and momentum magnitudes.
//! * [`gaussian`] — the closed-form solution of the two-profile problem in
//!   the Gaussian class: congruence reduction, exact Fourier images of
//!   Gaussian states, and enumeration of the `2^l` solution orbits.
//! * [`solvers`] — seeded alternating magnitude projections, ambiguity
//!   search with certified witnesses, and a two-frame reconstruction probe
//!   that classifies what random restarts converge to.
//!
//! All tolerances are pinned as named constants next to the routines they
//! guard. Every randomised routine takes an explicit seed and is
//! reproducible run-to-run.

pub mod constructions;
pub mod error;
pub mod gaussian;
pub mod measurement;
pub mod solvers;
pub mod statespace;

pub use error::{PauliError, Result};
