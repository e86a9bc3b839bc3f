//! Small numeric helpers: deterministic reductions and midpoint grids.

use num_complex::Complex64;

/// Pairwise (tree) sum of a slice, in a fixed order independent of chunking
/// or thread count. Used everywhere a parallel reduction feeds a reported
/// number, so results are reproducible bit-for-bit.
pub fn tree_sum_complex(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum_complex(&values[..mid]) + tree_sum_complex(&values[mid..])
        }
    }
}

/// Pairwise sum for reals; same fixed order as [`tree_sum_complex`].
pub fn tree_sum_f64(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            tree_sum_f64(&values[..mid]) + tree_sum_f64(&values[mid..])
        }
    }
}

/// Midpoints of `n` equal cells covering `[lo, hi]`.
pub fn midpoints(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let h = (hi - lo) / n as f64;
    (0..n).map(move |i| lo + (i as f64 + 0.5) * h)
}

/// Midpoint-rule quadrature of a complex integrand over `[lo, hi]` with `n`
/// cells, pairwise-summed.
pub fn midpoint_quad_complex(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let h = (hi - lo) / n as f64;
    let vals: Vec<Complex64> = midpoints(lo, hi, n).map(f).collect();
    tree_sum_complex(&vals) * h
}

/// Midpoint-rule quadrature of a real integrand.
pub fn midpoint_quad_f64(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (hi - lo) / n as f64;
    let vals: Vec<f64> = midpoints(lo, hi, n).map(f).collect();
    tree_sum_f64(&vals) * h
}

/// ∫ e^{iνx} dx over [lo, hi], closed form, with a series fallback near ν = 0.
pub fn osc_segment_integral(nu: f64, lo: f64, hi: f64) -> Complex64 {
    let len = hi - lo;
    if nu.abs() * len.abs() < 1e-8 {
        // e^{iνx} ≈ 1 + iνx − ν²x²/2 integrated exactly
        let mid = 0.5 * (lo + hi);
        let i2 = (hi * hi * hi - lo * lo * lo) / 3.0;
        return Complex64::new(len - 0.5 * nu * nu * i2, nu * mid * len);
    }
    let inu = Complex64::new(0.0, nu);
    ((inu * hi).exp() - (inu * lo).exp()) / inu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_sum_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((tree_sum_f64(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn osc_segment_matches_quadrature() {
        for &nu in &[0.0, 1e-12, 0.3, 7.0, 250.0] {
            let exact = osc_segment_integral(nu, -0.3, 1.1);
            let quad = midpoint_quad_complex(-0.3, 1.1, 20_000, |x| {
                Complex64::new(0.0, nu * x).exp()
            });
            assert!(
                (exact - quad).norm() < 1e-6,
                "nu={nu}: {exact} vs {quad}"
            );
        }
    }
}
