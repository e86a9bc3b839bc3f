//! Windowed partition of unity at scale ℓ = λ^{−γ}: windows η_m ≥ 0 with
//! Σ_m η_m² = 1, each supported in the interval of length 2ℓ centered at mℓ.
//!
//! Built by normalizing translates of one smooth bump profile:
//! η_m² = w((y−mℓ)/ℓ) / Σ_n w((y−nℓ)/ℓ). The denominator is 1-periodic in
//! y/ℓ and positive, so the identity Σ η_m² = 1 holds pointwise by
//! construction and each η_m inherits the bump's support exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smooth bump profile on (−1, 1).
fn profile(t: f64) -> f64 {
    let t2 = t * t;
    if t2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t2)).exp()
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PartitionOfUnity {
    /// Window spacing ℓ (the interval I_m has length ℓ).
    pub scale: f64,
}

impl PartitionOfUnity {
    pub fn new(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Config(format!("invalid partition scale {scale}")));
        }
        Ok(Self { scale })
    }

    /// Partition at scale λ^{−γ}.
    pub fn for_lambda(lambda: f64, gamma: f64) -> Result<Self> {
        if lambda < 1.0 {
            return Err(Error::Precondition(format!("lambda = {lambda} must be >= 1")));
        }
        Self::new(lambda.powf(-gamma))
    }

    fn denominator(&self, y: f64) -> f64 {
        let u = y / self.scale;
        let m0 = u.floor() as i64;
        (m0 - 1..=m0 + 2).map(|m| profile(u - m as f64)).sum()
    }

    /// η_m(y).
    pub fn window(&self, m: i64, y: f64) -> f64 {
        let t = y / self.scale - m as f64;
        let w = profile(t);
        if w == 0.0 {
            0.0
        } else {
            (w / self.denominator(y)).sqrt()
        }
    }

    /// Support of η_m: the open interval of length 2ℓ concentric with I_m.
    pub fn support(&self, m: i64) -> (f64, f64) {
        (
            (m as f64 - 1.0) * self.scale,
            (m as f64 + 1.0) * self.scale,
        )
    }

    /// I_m: length ℓ, centered at mℓ.
    pub fn interval(&self, m: i64) -> (f64, f64) {
        (
            (m as f64 - 0.5) * self.scale,
            (m as f64 + 0.5) * self.scale,
        )
    }

    /// I_m*: length 3ℓ, centered at mℓ.
    pub fn interval_star(&self, m: i64) -> (f64, f64) {
        (
            (m as f64 - 1.5) * self.scale,
            (m as f64 + 1.5) * self.scale,
        )
    }

    /// Index of the interval I_m containing y (nearest center).
    pub fn index_of(&self, y: f64) -> i64 {
        (y / self.scale).round() as i64
    }

    /// All m whose window support intersects [lo, hi].
    pub fn windows_touching(&self, lo: f64, hi: f64) -> Vec<i64> {
        let m_lo = (lo / self.scale).floor() as i64;
        let m_hi = (hi / self.scale).ceil() as i64;
        (m_lo - 1..=m_hi + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_sum_to_one() {
        let pou = PartitionOfUnity::new(0.125).unwrap();
        for i in 0..=2000 {
            let y = -2.0 + 4.0 * i as f64 / 2000.0;
            let ms = pou.windows_touching(y, y);
            let s: f64 = ms.iter().map(|&m| pou.window(m, y).powi(2)).sum();
            assert!((s - 1.0).abs() < 1e-10, "y = {y}: sum = {s}");
        }
    }

    #[test]
    fn windows_vanish_outside_stated_support() {
        let pou = PartitionOfUnity::new(0.25).unwrap();
        let (lo, hi) = pou.support(3);
        assert_eq!(pou.window(3, lo), 0.0);
        assert_eq!(pou.window(3, hi), 0.0);
        assert_eq!(pou.window(3, lo - 0.3), 0.0);
        assert_eq!(pou.window(3, hi + 0.3), 0.0);
        assert!(pou.window(3, 0.75) > 0.0);
        // support has length 2ℓ and sits inside I_m* (length 3ℓ)
        let (slo, shi) = pou.support(3);
        let (ilo, ihi) = pou.interval_star(3);
        assert!(ilo < slo && shi < ihi);
        assert!((shi - slo - 2.0 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn windows_nonnegative() {
        let pou = PartitionOfUnity::for_lambda(64.0, 0.75).unwrap();
        for i in 0..500 {
            let y = -1.0 + 2.0 * i as f64 / 500.0;
            let m = pou.index_of(y);
            assert!(pou.window(m, y) >= 0.0);
        }
    }
}
