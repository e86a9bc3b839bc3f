//! Numerical laboratory for implicitly oscillatory quadrilinear integrals.
//!
//! The central object is the form
//!
//! ```text
//! T(f) = ∫_{R²} ∏_{j=1..4} f_j(φ_j(x)) · η(x) dx
//! ```
//!
//! where the φ_j are fixed polynomial submersions on a ball and the f_j are
//! one-dimensional complex functions. Oscillation enters *implicitly*, through
//! the compositions f_j ∘ φ_j rather than through an explicit e^{iλφ} factor.
//! The crate provides the machinery to evaluate T, to decompose inputs into
//! structured ("sharp") and dispersed ("flat") parts, to count the stationary
//! index tuples that control |T|, to measure the sublevel sets those counts
//! reduce to, and to analyze the associated functional equation and trilinear
//! s-integrals.
//!
//! Modules map onto the stages of that pipeline:
//!
//! * [`phase_geometry`] — phase systems Φ = (φ₁..φ₄), exact derivatives,
//!   and numerical checkers for the non-degeneracy hypotheses.
//! * [`signals`] — exact finite Fourier-series test functions, the difference
//!   modulation D_s f, windowed partitions of unity, local Fourier coefficients.
//! * [`quadrature`] — tensor-grid evaluation of T and decay sweeps in λ.
//! * [`flat_sharp`] — the ♭/♯ time-frequency decomposition.
//! * [`stationary`] — interacting-tuple enumeration and stationary censuses.
//! * [`sublevel`] — sublevel-set measurement and power-law fitting.
//! * [`functional_eq`] — kernel fields, foliation transport, holonomy, and
//!   the scaling exponent σ.
//! * [`trilinear`] — the trilinear s-integral with phase ξ(s) ≈ r·s^σ and its
//!   decay in r.
//!
//! Everything is deterministic: fixed seeds, fixed-order reductions, and
//! grid-sampled checks that are reproducible bit-for-bit for a fixed
//! configuration.

pub mod config;
pub mod error;
pub mod fit;
pub mod flat_sharp;
pub mod functional_eq;
pub mod params;
pub mod phase_geometry;
pub mod quadrature;
pub mod reference;
pub mod signals;
pub mod stationary;
pub mod sublevel;
pub mod trilinear;
pub mod util;

pub use error::{Error, Result};
