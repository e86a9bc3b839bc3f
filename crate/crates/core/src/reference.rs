//! Reference phase systems shipped with the laboratory.
//!
//! * [`linear_system`] — LINEAR = (x₁, x₂, x₁+x₂, x₁−x₂): resonant by
//!   construction (x₁ + x₂ − (x₁+x₂) ≡ 0), used for the non-decay tests.
//! * [`curved_system`] — CURVED: a validated non-resonant system. With
//!   φ₁ = x₁ and φ₂ = x₂, any *quadratic* pair (φ₃, φ₄) is resonant — the
//!   only quadratic cross monomial is x₁x₂, so some linear combination of
//!   φ₃, φ₄ is additively separable. The shipped phases therefore carry
//!   independent cubic cross terms x₁²x₂ and x₁x₂², with quadratic parts for
//!   curvature at the center. Margins re-checked by the resonance and
//!   transversality oracles in this crate's tests before every release.
//! * [`feq_solvable_system`] — a linear triple admitting an exact constant
//!   solution of the functional equation, for holonomy and σ-extraction
//!   demonstrations.

use crate::phase_geometry::poly::BivariatePolynomial;
use crate::phase_geometry::{Ball, Cutoff, PhaseMap, PhaseSystem, Point2};

fn build(
    name: &str,
    polys: [&[(u32, u32, f64)]; 4],
    radius: f64,
    outer_radius: f64,
    cutoff_radius: f64,
) -> PhaseSystem {
    let phases = polys.map(|t| PhaseMap::new(BivariatePolynomial::from_terms(t).unwrap()));
    let center = Point2 { x1: 0.0, x2: 0.0 };
    PhaseSystem::new(
        phases,
        Ball::new(center, radius, outer_radius).unwrap(),
        Cutoff::new(center, cutoff_radius).unwrap(),
        name,
    )
    .expect("reference system must be non-degenerate")
}

/// Resonant linear system (x₁, x₂, x₁+x₂, x₁−x₂) on the ball of radius 1/2.
pub fn linear_system() -> PhaseSystem {
    build(
        "linear",
        [
            &[(1, 0, 1.0)],
            &[(0, 1, 1.0)],
            &[(1, 0, 1.0), (0, 1, 1.0)],
            &[(1, 0, 1.0), (0, 1, -1.0)],
        ],
        0.5,
        0.75,
        0.45,
    )
}

/// Non-resonant curved system on the ball of radius 1/2:
///
/// ```text
/// φ₁ = x₁
/// φ₂ = x₂
/// φ₃ = x₁ + x₂ + x₁²/2 + x₁x₂/4 + 5x₁²x₂/4
/// φ₄ = x₁ − x₂ + x₂²/2 − x₁x₂/4 + 5x₁x₂²/4
/// ```
pub fn curved_system() -> PhaseSystem {
    build(
        "curved",
        [
            &[(1, 0, 1.0)],
            &[(0, 1, 1.0)],
            &[
                (1, 0, 1.0),
                (0, 1, 1.0),
                (2, 0, 0.5),
                (1, 1, 0.25),
                (2, 1, 1.25),
            ],
            &[
                (1, 0, 1.0),
                (0, 1, -1.0),
                (0, 2, 0.5),
                (1, 1, -0.25),
                (1, 2, 1.25),
            ],
        ],
        0.5,
        0.75,
        0.45,
    )
}

/// Linear system (x₂, x₁+x₂, 2x₁+x₂, x₁) whose first three phases admit the
/// exact constant solution (−1, 2, −1) of the functional equation
/// Σ f_j(Φ_j)·∇φ_j = 0: holonomy vanishes and the scaling exponent is 0,
/// which the σ-extractor must flag (a nonzero solution with σ = 0 contradicts
/// the main hypothesis, and indeed this system is resonant).
pub fn feq_solvable_system() -> PhaseSystem {
    build(
        "feq-solvable",
        [
            &[(0, 1, 1.0)],
            &[(1, 0, 1.0), (0, 1, 1.0)],
            &[(1, 0, 2.0), (0, 1, 1.0)],
            &[(1, 0, 1.0)],
        ],
        0.5,
        0.75,
        0.45,
    )
}

/// Look a system up by name ("linear", "curved", "feq-solvable").
pub fn by_name(name: &str) -> Option<PhaseSystem> {
    match name {
        "linear" => Some(linear_system()),
        "curved" => Some(curved_system()),
        "feq-solvable" => Some(feq_solvable_system()),
        _ => None,
    }
}
