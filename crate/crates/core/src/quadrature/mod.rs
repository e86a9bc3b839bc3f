//! Evaluation of the quadrilinear form T(f) = ∫ ∏ f_j(φ_j(x)) η(x) dx on
//! tensor midpoint grids, and decay sweeps in the band parameter λ.
//!
//! The integrand is C∞ with compact support (the cutoff vanishes to infinite
//! order at its boundary), so the composite midpoint rule is spectrally
//! accurate once the grid resolves the oscillation; the guard below enforces
//! a configurable number of samples per shortest wavelength. Grid tiles are
//! evaluated in parallel and combined in a fixed tree order, so values are
//! independent of the thread count.

pub mod sampled;
pub mod sweep;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_geometry::{PhaseSystem, Point2};
use crate::signals::FourierFunction1D;
use crate::util;
use sampled::SampledFunction;

pub use sweep::{decay_sweep, fit_decay_series, DecayFamily, DecayFit, DecaySweepConfig};

/// Tensor-grid specification.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub points_per_axis: usize,
    /// Samples per shortest wavelength the grid must provide (≥ 4).
    pub oversampling: f64,
}

impl GridSpec {
    pub fn new(points_per_axis: usize, oversampling: f64) -> Result<Self> {
        if oversampling < 4.0 {
            return Err(Error::Config(format!(
                "oversampling {oversampling} must be >= 4"
            )));
        }
        if points_per_axis < 8 {
            return Err(Error::Config(format!(
                "points_per_axis {points_per_axis} must be >= 8"
            )));
        }
        Ok(Self {
            points_per_axis,
            oversampling,
        })
    }
}

/// A computed form value with its grid and, when convergence mode is on,
/// the change under one grid doubling.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FormValue {
    pub value: Complex64,
    pub grid: GridSpec,
    /// |T(2N) − T(N)|; NaN when not measured.
    pub refinement_delta: f64,
}

/// Minimum points per axis demanded by the oversampling bound: the
/// integrand's local frequency is at most Σ_j band(f_j)·max|∇φ_j|.
pub fn required_resolution(
    system: &PhaseSystem,
    fs: &[&FourierFunction1D; 4],
    oversampling: f64,
) -> usize {
    let (lo1, hi1, lo2, hi2) = system.cutoff.support_box();
    let side = (hi1 - lo1).max(hi2 - lo2);
    let mut total_freq = 0.0;
    for (j, f) in fs.iter().enumerate() {
        let (_, band_hi) = f.band();
        total_freq += band_hi * system.max_gradient_norm(j, 48);
    }
    let wavelengths = side * total_freq / (2.0 * std::f64::consts::PI);
    ((oversampling * wavelengths).ceil() as usize).max(32)
}

fn eval_grid(
    system: &PhaseSystem,
    sampled: &[SampledFunction; 4],
    n: usize,
) -> Complex64 {
    let (lo1, hi1, lo2, hi2) = system.cutoff.support_box();
    let h1 = (hi1 - lo1) / n as f64;
    let h2 = (hi2 - lo2) / n as f64;
    // One partial sum per row, each accumulated sequentially; the row array
    // is then pairwise-reduced in fixed order.
    let rows: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x1 = lo1 + (i as f64 + 0.5) * h1;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let x2 = lo2 + (j as f64 + 0.5) * h2;
                let p = Point2 { x1, x2 };
                let eta = system.cutoff.eval(&p);
                if eta == 0.0 {
                    continue;
                }
                let mut prod = Complex64::new(eta, 0.0);
                for (slot, sf) in sampled.iter().enumerate() {
                    prod *= sf.eval(system.phases[slot].eval(&p));
                }
                acc += prod;
            }
            acc
        })
        .collect();
    util::tree_sum_complex(&rows) * Complex64::new(h1 * h2, 0.0)
}

/// Evaluate T(f₁..f₄) by tensor midpoint quadrature over the bounding box of
/// the cutoff's support.
pub fn evaluate_form(
    system: &PhaseSystem,
    fs: &[&FourierFunction1D; 4],
    grid: GridSpec,
) -> Result<FormValue> {
    let required = required_resolution(system, fs, grid.oversampling);
    if grid.points_per_axis < required {
        return Err(Error::ResolutionGuard {
            required,
            allowed: grid.points_per_axis,
            context: "form quadrature oversampling bound".into(),
        });
    }
    let sampled = [
        SampledFunction::from_fourier(fs[0]),
        SampledFunction::from_fourier(fs[1]),
        SampledFunction::from_fourier(fs[2]),
        SampledFunction::from_fourier(fs[3]),
    ];
    let value = eval_grid(system, &sampled, grid.points_per_axis);
    Ok(FormValue {
        value,
        grid,
        refinement_delta: f64::NAN,
    })
}

/// Evaluate at N and 2N points per axis; returns the finer value with the
/// doubling delta recorded.
pub fn evaluate_form_refined(
    system: &PhaseSystem,
    fs: &[&FourierFunction1D; 4],
    grid: GridSpec,
) -> Result<FormValue> {
    let required = required_resolution(system, fs, grid.oversampling);
    if grid.points_per_axis < required {
        return Err(Error::ResolutionGuard {
            required,
            allowed: grid.points_per_axis,
            context: "form quadrature oversampling bound".into(),
        });
    }
    let sampled = [
        SampledFunction::from_fourier(fs[0]),
        SampledFunction::from_fourier(fs[1]),
        SampledFunction::from_fourier(fs[2]),
        SampledFunction::from_fourier(fs[3]),
    ];
    let coarse = eval_grid(system, &sampled, grid.points_per_axis);
    let fine = eval_grid(system, &sampled, 2 * grid.points_per_axis);
    Ok(FormValue {
        value: fine,
        grid,
        refinement_delta: (fine - coarse).norm(),
    })
}

/// ∫η over the same grid, for the trivial bound |T| ≤ ∫η·∏‖f_j‖∞.
pub fn cutoff_mass(system: &PhaseSystem, n: usize) -> f64 {
    let (lo1, hi1, lo2, hi2) = system.cutoff.support_box();
    let h1 = (hi1 - lo1) / n as f64;
    let h2 = (hi2 - lo2) / n as f64;
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x1 = lo1 + (i as f64 + 0.5) * h1;
            let mut acc = 0.0;
            for j in 0..n {
                let x2 = lo2 + (j as f64 + 0.5) * h2;
                acc += system.cutoff.eval(&Point2 { x1, x2 });
            }
            acc
        })
        .collect();
    util::tree_sum_f64(&rows) * h1 * h2
}

/// |T| / ∏_j ‖f_j‖_{L²(φ_j(B))}: the L²-normalized ratio whose empirical
/// uniform boundedness reflects the a-priori L² bound on the form.
pub fn l2_normalized_ratio(
    system: &PhaseSystem,
    fs: &[&FourierFunction1D; 4],
    grid: GridSpec,
) -> Result<f64> {
    let t = evaluate_form(system, fs, grid)?;
    let mut denom = 1.0;
    for (j, f) in fs.iter().enumerate() {
        let (lo, hi) = system.phase_range(j, 64);
        let (_, band_hi) = f.band();
        let n = ((16.0 * band_hi * (hi - lo) / (2.0 * std::f64::consts::PI)).ceil() as usize)
            .max(1024);
        let norm_sq = util::midpoint_quad_f64(lo, hi, n, |y| f.eval(y).norm_sqr());
        let norm = norm_sq.sqrt();
        if norm < 1e-150 {
            return Err(Error::Degenerate(format!(
                "slot {}: zero L2 norm on the phase range",
                j + 1
            )));
        }
        denom *= norm;
    }
    Ok(t.value.norm() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use crate::signals::{synth_bandlimited, Band};

    fn constant_one(period: f64, offset: f64) -> FourierFunction1D {
        FourierFunction1D::single_mode(period, offset, 0, Complex64::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn constants_reduce_to_cutoff_mass() {
        let sys = reference::linear_system();
        let one = constant_one(8.0, -4.0);
        let grid = GridSpec::new(256, 8.0).unwrap();
        let t = evaluate_form(&sys, &[&one, &one, &one, &one], grid).unwrap();
        let mass = cutoff_mass(&sys, 256);
        assert!((t.value.re - mass).abs() < 1e-12);
        assert!(t.value.im.abs() < 1e-15);
    }

    #[test]
    fn oversampling_guard_names_required_resolution() {
        let sys = reference::curved_system();
        let f = synth_bandlimited(8.0, -4.0, 256.0, Band::Lowpass, 3).unwrap();
        let one = constant_one(8.0, -4.0);
        let grid = GridSpec::new(4, 8.0);
        assert!(grid.is_err());
        let grid = GridSpec::new(32, 8.0).unwrap();
        match evaluate_form(&sys, &[&f, &one, &one, &one], grid) {
            Err(Error::ResolutionGuard { required, .. }) => assert!(required > 32),
            other => panic!("expected resolution guard, got {other:?}"),
        }
    }

    #[test]
    fn l2_ratio_of_constants() {
        let sys = reference::linear_system();
        let one = constant_one(8.0, -4.0);
        let grid = GridSpec::new(256, 8.0).unwrap();
        let ratio = l2_normalized_ratio(&sys, &[&one, &one, &one, &one], grid).unwrap();
        let mut expect = cutoff_mass(&sys, 256);
        for j in 0..4 {
            let (lo, hi) = sys.phase_range(j, 64);
            expect /= (hi - lo).sqrt();
        }
        assert!(
            (ratio - expect).abs() < 1e-6 * expect,
            "ratio {ratio} vs {expect}"
        );
    }

    #[test]
    fn zero_slot_is_degenerate_for_the_ratio() {
        let sys = reference::linear_system();
        let one = constant_one(8.0, -4.0);
        let zero = FourierFunction1D::zero(8.0, -4.0);
        let grid = GridSpec::new(256, 8.0).unwrap();
        assert!(matches!(
            l2_normalized_ratio(&sys, &[&zero, &one, &one, &one], grid),
            Err(Error::Degenerate(_))
        ));
    }
}
