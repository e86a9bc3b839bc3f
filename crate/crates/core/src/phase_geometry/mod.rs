//! The geometric datum: four polynomial submersions on a ball, their exact
//! derivatives, annihilating vector fields, and grid-sampled checkers for the
//! non-degeneracy hypotheses that the decay theory requires.
//!
//! Phases are restricted to bivariate polynomials so that gradients, Hessians,
//! and the identity V_j(φ_j) ≡ 0 are exact coefficient arithmetic rather than
//! numerics. Hypothesis checks are sufficient-evidence tests on deterministic
//! grids, not proofs.

pub mod checks;
pub mod poly;
pub mod resonance;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use poly::BivariatePolynomial;

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !(x1.is_finite() && x2.is_finite()) {
            return Err(Error::Config(format!("non-finite point ({x1}, {x2})")));
        }
        Ok(Self { x1, x2 })
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        ((self.x1 - other.x1).powi(2) + (self.x2 - other.x2).powi(2)).sqrt()
    }
}

/// The working ball B together with the slightly larger neighborhood B̃ on
/// which all phase data must stay non-degenerate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point2,
    pub radius: f64,
    pub outer_radius: f64,
}

impl Ball {
    pub fn new(center: Point2, radius: f64, outer_radius: f64) -> Result<Self> {
        if !(radius.is_finite() && outer_radius.is_finite()) || radius <= 0.0 {
            return Err(Error::Config(format!("invalid ball radius {radius}")));
        }
        if outer_radius <= radius {
            return Err(Error::Config(format!(
                "outer radius {outer_radius} must exceed radius {radius}"
            )));
        }
        Ok(Self {
            center,
            radius,
            outer_radius,
        })
    }

    pub fn contains(&self, p: &Point2) -> bool {
        p.dist(&self.center) < self.radius
    }

    pub fn outer_contains(&self, p: &Point2) -> bool {
        p.dist(&self.center) < self.outer_radius
    }

    /// Deterministic `res × res` scan of the bounding square of B, keeping
    /// the points strictly inside the ball.
    pub fn grid(&self, res: usize) -> Vec<Point2> {
        grid_in_disc(self.center, self.radius, res)
    }

    /// Same scan over the outer ball B̃.
    pub fn outer_grid(&self, res: usize) -> Vec<Point2> {
        grid_in_disc(self.center, self.outer_radius, res)
    }
}

fn grid_in_disc(center: Point2, radius: f64, res: usize) -> Vec<Point2> {
    let mut pts = Vec::new();
    let lo1 = center.x1 - radius;
    let lo2 = center.x2 - radius;
    let h = 2.0 * radius / (res.max(2) - 1) as f64;
    for i in 0..res {
        for j in 0..res {
            let p = Point2 {
                x1: lo1 + i as f64 * h,
                x2: lo2 + j as f64 * h,
            };
            if p.dist(&center) < radius {
                pts.push(p);
            }
        }
    }
    pts
}

/// Smooth compactly supported bump η, the standard profile
/// exp(1 − 1/(1 − |x−c|²/r²)) inside the ball of radius r, zero outside.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Cutoff {
    pub center: Point2,
    pub radius: f64,
}

impl Cutoff {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Config(format!("invalid cutoff radius {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn eval(&self, p: &Point2) -> f64 {
        let q = p.dist(&self.center) / self.radius;
        let q2 = q * q;
        if q2 >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - q2)).exp()
        }
    }

    /// Bounding box [lo1, hi1] × [lo2, hi2] of the support.
    pub fn support_box(&self) -> (f64, f64, f64, f64) {
        (
            self.center.x1 - self.radius,
            self.center.x1 + self.radius,
            self.center.x2 - self.radius,
            self.center.x2 + self.radius,
        )
    }
}

/// One phase φ_j with its exact first and second derivatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseMap {
    p: BivariatePolynomial,
    d1: BivariatePolynomial,
    d2: BivariatePolynomial,
    d11: BivariatePolynomial,
    d12: BivariatePolynomial,
    d22: BivariatePolynomial,
}

impl PhaseMap {
    pub fn new(p: BivariatePolynomial) -> Self {
        let d1 = p.derivative(0);
        let d2 = p.derivative(1);
        let d11 = d1.derivative(0);
        let d12 = d1.derivative(1);
        let d22 = d2.derivative(1);
        Self {
            p,
            d1,
            d2,
            d11,
            d12,
            d22,
        }
    }

    pub fn polynomial(&self) -> &BivariatePolynomial {
        &self.p
    }

    pub fn eval(&self, x: &Point2) -> f64 {
        self.p.eval(x.x1, x.x2)
    }

    pub fn gradient(&self, x: &Point2) -> (f64, f64) {
        (self.d1.eval(x.x1, x.x2), self.d2.eval(x.x1, x.x2))
    }

    /// The annihilating field V = (−∂₂φ, ∂₁φ); V·∇φ ≡ 0 exactly.
    pub fn annihilating_field(&self, x: &Point2) -> (f64, f64) {
        (-self.d2.eval(x.x1, x.x2), self.d1.eval(x.x1, x.x2))
    }

    pub fn hessian(&self, x: &Point2) -> [[f64; 2]; 2] {
        let h11 = self.d11.eval(x.x1, x.x2);
        let h12 = self.d12.eval(x.x1, x.x2);
        let h22 = self.d22.eval(x.x1, x.x2);
        [[h11, h12], [h12, h22]]
    }

    /// V(φ) as an exact polynomial: −∂₂φ·∂₁φ + ∂₁φ·∂₂φ. Returns the largest
    /// surviving coefficient magnitude, which must vanish identically.
    pub fn annihilation_defect(&self) -> f64 {
        let prod1 = self.d2.scale(-1.0).mul(&self.d1);
        let prod2 = self.d1.mul(&self.d2);
        prod1.add(&prod2).max_abs_coeff()
    }
}

/// The full geometric datum Φ = (φ₁..φ₄) with ball and cutoff.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseSystem {
    pub phases: [PhaseMap; 4],
    pub ball: Ball,
    pub cutoff: Cutoff,
    pub name: String,
}

impl PhaseSystem {
    pub fn new(phases: [PhaseMap; 4], ball: Ball, cutoff: Cutoff, name: &str) -> Result<Self> {
        let sys = Self {
            phases,
            ball,
            cutoff,
            name: name.to_string(),
        };
        sys.check_submersion(32)?;
        Ok(sys)
    }

    /// Submersion guard: |∇φ_j| > 0 at every grid point of B̃.
    pub fn check_submersion(&self, res: usize) -> Result<f64> {
        let mut min_norm = f64::INFINITY;
        for p in self.ball.outer_grid(res) {
            for (j, phase) in self.phases.iter().enumerate() {
                let (g1, g2) = phase.gradient(&p);
                let n = (g1 * g1 + g2 * g2).sqrt();
                if n < 1e-12 {
                    return Err(Error::Degenerate(format!(
                        "phase {} has vanishing gradient at ({}, {})",
                        j + 1,
                        p.x1,
                        p.x2
                    )));
                }
                min_norm = min_norm.min(n);
            }
        }
        Ok(min_norm)
    }

    pub fn phase(&self, j: usize) -> &PhaseMap {
        &self.phases[j]
    }

    /// Range [min, max] of φ_j over a grid on the outer ball.
    pub fn phase_range(&self, j: usize, res: usize) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in self.ball.outer_grid(res) {
            let v = self.phases[j].eval(&p);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    /// Max |∇φ_j| over a grid on the outer ball.
    pub fn max_gradient_norm(&self, j: usize, res: usize) -> f64 {
        let mut m: f64 = 0.0;
        for p in self.ball.outer_grid(res) {
            let (g1, g2) = self.phases[j].gradient(&p);
            m = m.max((g1 * g1 + g2 * g2).sqrt());
        }
        m
    }
}

/// Aggregate outcome of all hypothesis checkers for one system. Every field
/// is a deterministic function of (system, grid spec, tolerance).
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub system: String,
    /// Min over phase pairs and grid points of the normalized gradient
    /// determinant.
    pub transversality_margin: f64,
    /// Min over k and the 3D grid of the normalized tangent-triple
    /// determinant; < tolerance flags degeneracy.
    pub aux2_margin: f64,
    /// Smallest singular value of the resonance map, per tested degree.
    pub resonance_sigma_min: Vec<(usize, f64)>,
    /// Smallest singular value of the first auxiliary system, per excluded
    /// index k ∈ 1..4.
    pub aux1_sigma_min: Vec<(usize, f64)>,
    /// Relative residual of the ratio fit, per (τ, degree) tested; ≈ 0 flags
    /// a violation.
    pub aux3_residuals: Vec<(f64, usize, f64)>,
    /// The pass/fail tolerance in force when the report was generated.
    pub tolerance: f64,
    /// True when every check clears the tolerance.
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn projection_x1() -> PhaseMap {
        PhaseMap::new(BivariatePolynomial::from_terms(&[(1, 0, 1.0)]).unwrap())
    }

    #[test]
    fn eval_phase_examples() {
        let p = projection_x1();
        assert_eq!(p.eval(&Point2 { x1: 0.3, x2: 0.5 }), 0.3);

        let q = PhaseMap::new(
            BivariatePolynomial::from_terms(&[(1, 0, 1.0), (0, 1, 1.0), (2, 0, 1.0)]).unwrap(),
        );
        assert!((q.eval(&Point2 { x1: 0.1, x2: 0.2 }) - 0.31).abs() < 1e-15);

        let z = PhaseMap::new(BivariatePolynomial::zero());
        assert_eq!(z.eval(&Point2 { x1: -2.0, x2: 7.0 }), 0.0);
    }

    #[test]
    fn gradient_examples() {
        let p = projection_x1();
        assert_eq!(p.gradient(&Point2 { x1: 9.0, x2: -3.0 }), (1.0, 0.0));

        let q = PhaseMap::new(
            BivariatePolynomial::from_terms(&[(1, 0, 1.0), (0, 1, 1.0), (2, 0, 1.0)]).unwrap(),
        );
        let (g1, g2) = q.gradient(&Point2 { x1: 0.1, x2: 0.2 });
        assert!((g1 - 1.2).abs() < 1e-15);
        assert!((g2 - 1.0).abs() < 1e-15);

        let r = PhaseMap::new(BivariatePolynomial::from_terms(&[(1, 1, 1.0)]).unwrap());
        assert_eq!(r.gradient(&Point2 { x1: 2.0, x2: 3.0 }), (3.0, 2.0));
    }

    #[test]
    fn annihilating_field_examples() {
        let p = projection_x1();
        assert_eq!(p.annihilating_field(&Point2 { x1: 0.4, x2: 0.1 }), (0.0, 1.0));

        let q = PhaseMap::new(BivariatePolynomial::from_terms(&[(0, 1, 1.0)]).unwrap());
        assert_eq!(q.annihilating_field(&Point2 { x1: 0.4, x2: 0.1 }), (-1.0, 0.0));

        let r = PhaseMap::new(
            BivariatePolynomial::from_terms(&[(1, 0, 1.0), (0, 1, 1.0)]).unwrap(),
        );
        assert_eq!(r.annihilating_field(&Point2 { x1: 5.0, x2: 5.0 }), (-1.0, 1.0));
    }

    #[test]
    fn annihilation_is_exact_coefficient_cancellation() {
        for sys in [reference::linear_system(), reference::curved_system()] {
            for phase in &sys.phases {
                assert_eq!(phase.annihilation_defect(), 0.0);
            }
        }
    }

    #[test]
    fn annihilating_field_orthogonal_to_gradient() {
        let sys = reference::curved_system();
        for p in sys.ball.grid(9) {
            for phase in &sys.phases {
                let (g1, g2) = phase.gradient(&p);
                let (v1, v2) = phase.annihilating_field(&p);
                assert!((g1 * v1 + g2 * v2).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn degenerate_constant_phase_rejected() {
        let constant = PhaseMap::new(BivariatePolynomial::from_terms(&[(0, 0, 3.0)]).unwrap());
        let ball = Ball::new(Point2 { x1: 0.0, x2: 0.0 }, 0.5, 0.75).unwrap();
        let cutoff = Cutoff::new(Point2 { x1: 0.0, x2: 0.0 }, 0.45).unwrap();
        let sys = PhaseSystem::new(
            [
                constant,
                projection_x1(),
                projection_x1(),
                projection_x1(),
            ],
            ball,
            cutoff,
            "degenerate",
        );
        assert!(matches!(sys, Err(Error::Degenerate(_))));
    }

    #[test]
    fn ball_invariants() {
        let c = Point2 { x1: 0.0, x2: 0.0 };
        assert!(Ball::new(c, 0.5, 0.4).is_err());
        assert!(Ball::new(c, -1.0, 2.0).is_err());
        assert!(Ball::new(c, 0.5, 0.75).is_ok());
    }

    #[test]
    fn cutoff_is_a_bump() {
        let c = Cutoff::new(Point2 { x1: 0.0, x2: 0.0 }, 0.5).unwrap();
        assert_eq!(c.eval(&Point2 { x1: 0.6, x2: 0.0 }), 0.0);
        assert_eq!(c.eval(&Point2 { x1: 0.5, x2: 0.0 }), 0.0);
        let v = c.eval(&Point2 { x1: 0.0, x2: 0.0 });
        assert!((v - 1.0).abs() < 1e-15);
        let w = c.eval(&Point2 { x1: 0.3, x2: 0.0 });
        assert!(w > 0.0 && w < 1.0);
    }
}
