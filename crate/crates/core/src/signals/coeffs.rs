//! Local Fourier coefficients of windowed difference modulations:
//!
//! a_{m,s,k} = ½λ^γ ∫ η_m(y) f(y+s) conj(f(y)) e^{−iπλ^γ k y} dy
//!
//! over the support of η_m. The exponentials e^{iπλ^γ k y} are an orthogonal
//! basis of L² on that support (length 2λ^{−γ}), so Σ_k |a_k|² equals the
//! window-weighted discrete norm ½λ^γ·∫|η_m·D_s f|² up to tail truncation.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signals::pou::PartitionOfUnity;
use crate::signals::FourierFunction1D;
use crate::util;

/// Default cap on quadrature points per coefficient integral.
pub const DEFAULT_MAX_POINTS: usize = 1 << 22;

/// Coefficients of one (window, shift) cell.
#[derive(Debug, Clone)]
pub struct WindowedCoefficients {
    pub m: i64,
    pub s: f64,
    /// Window scale ℓ = λ^{−γ}.
    pub scale: f64,
    pub values: BTreeMap<i64, Complex64>,
}

impl WindowedCoefficients {
    pub fn sum_sq(&self) -> f64 {
        self.values.values().map(|c| c.norm_sqr()).sum()
    }

    /// |a| at k, 0 when absent.
    pub fn abs_at(&self, k: i64) -> f64 {
        self.values.get(&k).map_or(0.0, |c| c.norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Number of midpoint samples for an integrand with max angular frequency
/// `omega_max` over an interval of length `len`: 16 samples per shortest
/// wavelength (16× the Nyquist rate), floor 64.
fn quadrature_points(omega_max: f64, len: f64) -> usize {
    let per_unit = omega_max / std::f64::consts::PI; // Nyquist rate
    ((16.0 * per_unit * len).ceil() as usize).max(64)
}

/// Integrate η_m(y)·D_s f(y)·e^{−iπ k y/ℓ} over supp η_m by the midpoint
/// rule, for every k in `k_range`, with the ½λ^γ normalization.
pub fn local_fourier_coefficients(
    f: &FourierFunction1D,
    pou: &PartitionOfUnity,
    m: i64,
    s: f64,
    k_range: std::ops::RangeInclusive<i64>,
    max_points: usize,
) -> Result<WindowedCoefficients> {
    let ell = pou.scale;
    let (lo, hi) = pou.support(m);
    let k_max = (*k_range.start()).abs().max((*k_range.end()).abs());
    let (_, band_hi) = f.band();
    let omega_max = 2.0 * band_hi + std::f64::consts::PI * k_max as f64 / ell;
    let n = quadrature_points(omega_max, hi - lo);
    if n > max_points {
        return Err(Error::ResolutionGuard {
            required: n,
            allowed: max_points,
            context: format!("local coefficients at window {m}, |k| <= {k_max}"),
        });
    }

    // Evaluate η_m·D_s f on the midpoint grid once, then do all k's by
    // recurrence on e^{−iπy/ℓ}.
    let h = (hi - lo) / n as f64;
    let ys: Vec<f64> = util::midpoints(lo, hi, n).collect();
    let weighted: Vec<Complex64> = ys
        .iter()
        .map(|&y| f.eval(y + s) * f.eval(y).conj() * pou.window(m, y))
        .collect();

    let mut values = BTreeMap::new();
    for k in k_range {
        let terms: Vec<Complex64> = ys
            .iter()
            .zip(&weighted)
            .map(|(&y, &g)| g * Complex64::new(0.0, -std::f64::consts::PI * k as f64 * y / ell).exp())
            .collect();
        let integral = util::tree_sum_complex(&terms) * h;
        values.insert(k, integral * (0.5 / ell));
    }
    Ok(WindowedCoefficients {
        m,
        s,
        scale: ell,
        values,
    })
}

/// Same integral for a single, not necessarily integer, frequency index k.
pub fn local_coefficient_real_k(
    f: &FourierFunction1D,
    pou: &PartitionOfUnity,
    m: i64,
    s: f64,
    k: f64,
    max_points: usize,
) -> Result<Complex64> {
    let ell = pou.scale;
    let (lo, hi) = pou.support(m);
    let (_, band_hi) = f.band();
    let omega_max = 2.0 * band_hi + std::f64::consts::PI * k.abs() / ell;
    let n = quadrature_points(omega_max, hi - lo);
    if n > max_points {
        return Err(Error::ResolutionGuard {
            required: n,
            allowed: max_points,
            context: format!("local coefficient at window {m}, k = {k}"),
        });
    }
    let integral = util::midpoint_quad_complex(lo, hi, n, |y| {
        f.eval(y + s)
            * f.eval(y).conj()
            * pou.window(m, y)
            * Complex64::new(0.0, -std::f64::consts::PI * k * y / ell).exp()
    });
    Ok(integral * (0.5 / ell))
}

/// Discrete norm ½λ^γ·∫ |η_m(y)·D_s f(y)|² dy, the Parseval counterpart of
/// Σ_k |a_{m,s,k}|².
pub fn windowed_norm_sq(
    f: &FourierFunction1D,
    pou: &PartitionOfUnity,
    m: i64,
    s: f64,
) -> f64 {
    let ell = pou.scale;
    let (lo, hi) = pou.support(m);
    let (_, band_hi) = f.band();
    let n = quadrature_points(4.0 * band_hi, hi - lo);
    let integral = util::midpoint_quad_f64(lo, hi, n, |y| {
        let v = f.eval(y + s) * f.eval(y).conj() * pou.window(m, y);
        v.norm_sqr()
    });
    integral * (0.5 / ell)
}

/// Symmetric k-range wide enough to capture the spectrum of η_m·D_s f:
/// the band of D_s f is ≤ 2·band(f), mapped to k = ω·ℓ/π, plus margin for
/// the window spectrum.
pub fn default_k_range(f: &FourierFunction1D, pou: &PartitionOfUnity, margin: i64) -> std::ops::RangeInclusive<i64> {
    let (_, band_hi) = f.band();
    let k_band = (2.0 * band_hi * pou.scale / std::f64::consts::PI).ceil() as i64;
    -(k_band + margin)..=(k_band + margin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{synth_bandlimited, Band};

    #[test]
    fn pure_exponential_concentrates_at_k_zero() {
        // D_s of a pure tone is constant in y, so the coefficients are the
        // window's own spectrum: maximal at k = 0, in the main-lobe shoulder
        // for |k| ≥ 2, and in the decayed tail for |k| ≥ 20.
        let f = FourierFunction1D::single_mode(8.0, -4.0, 40, Complex64::new(1.0, 0.0)).unwrap();
        let pou = PartitionOfUnity::new(0.125).unwrap();
        let co =
            local_fourier_coefficients(&f, &pou, 2, 0.03, -24..=24, DEFAULT_MAX_POINTS).unwrap();
        let peak = co.abs_at(0);
        assert!(peak > 0.0);
        for (k, &v) in co.values.iter().map(|(k, v)| (*k, v)) {
            if k.abs() >= 2 {
                assert!(v.norm() <= 0.15 * peak, "k = {k}: {} vs peak {peak}", v.norm());
            }
            if k.abs() >= 20 {
                assert!(v.norm() <= 1e-3 * peak, "k = {k}: {} vs peak {peak}", v.norm());
            }
        }
    }

    #[test]
    fn zero_function_gives_zero_coefficients() {
        let f = FourierFunction1D::zero(8.0, -4.0);
        let pou = PartitionOfUnity::new(0.25).unwrap();
        let co = local_fourier_coefficients(&f, &pou, 0, 0.1, -3..=3, DEFAULT_MAX_POINTS).unwrap();
        assert!(co.max_abs() == 0.0);
    }

    #[test]
    fn chirp_peak_tracks_shift() {
        // D_s(chirp β) has frequency 2βs, i.e. lattice index k ≈ 2βs·ℓ/π.
        let beta = 120.0;
        let f = crate::signals::chirp(beta, (-0.5, 0.5)).unwrap();
        let ell = 0.0625;
        let pou = PartitionOfUnity::new(ell).unwrap();
        let s = 0.05;
        let k_expect = (2.0 * beta * s * ell / std::f64::consts::PI).round() as i64;
        let co = local_fourier_coefficients(
            &f,
            &pou,
            0,
            s,
            (k_expect - 8)..=(k_expect + 8),
            DEFAULT_MAX_POINTS,
        )
        .unwrap();
        let (k_peak, _) = co
            .values
            .iter()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .unwrap();
        assert!(
            (k_peak - k_expect).abs() <= 1,
            "peak at {k_peak}, expected near {k_expect}"
        );
    }

    #[test]
    fn parseval_within_one_percent() {
        let f = synth_bandlimited(8.0, -4.0, 24.0, Band::Lowpass, 9).unwrap();
        let pou = PartitionOfUnity::new(0.125).unwrap();
        let s = 0.04;
        let m = 1;
        let k_range = default_k_range(&f, &pou, 24);
        let co = local_fourier_coefficients(&f, &pou, m, s, k_range, DEFAULT_MAX_POINTS).unwrap();
        let lhs = co.sum_sq();
        let rhs = windowed_norm_sq(&f, &pou, m, s);
        assert!(
            (lhs - rhs).abs() <= 0.01 * rhs.max(1e-30),
            "sum {lhs} vs norm {rhs}"
        );
    }
}
