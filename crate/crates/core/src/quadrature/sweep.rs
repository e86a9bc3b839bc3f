//! Decay sweeps: evaluate |T| across a ladder of band parameters λ and fit
//! the decay exponent δ in |T| ≈ C·λ^{−δ} on log-log axes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit;
use crate::phase_geometry::poly::Polynomial1D;
use crate::phase_geometry::PhaseSystem;
use crate::quadrature::{evaluate_form, evaluate_form_refined, required_resolution, GridSpec};
use crate::signals::{synth_bandlimited, Band, FourierFunction1D};

/// Input family for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecayFamily {
    /// f₁ annulus-band random, f₂..f₄ lowpass random.
    BandlimitedRandom,
    /// The non-decay witness family f_j = η_j·e^{iλF_j} with the linear
    /// resonance tuple F = (t, t, −t, 0); λ-independent on a resonant
    /// system because the phases cancel exactly.
    Resonant,
    /// f₁ a quadratic chirp with band ≤ λ, f₂..f₄ lowpass random.
    Chirp,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecaySweepConfig {
    pub oversampling: f64,
    /// Fit excludes λ whose mean |T| is below `noise_factor` × the measured
    /// grid-doubling delta.
    pub noise_factor: f64,
    pub min_fit_points: usize,
    /// Measure the grid-doubling delta (on the first seed of each λ).
    pub measure_refinement: bool,
    /// Cap on modes for the modulated-exponential construction.
    pub max_modes: usize,
}

impl Default for DecaySweepConfig {
    fn default() -> Self {
        Self {
            oversampling: 8.0,
            noise_factor: 10.0,
            min_fit_points: 4,
            measure_refinement: true,
            max_modes: 2_000_000,
        }
    }
}

/// One evaluated cell of the sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecaySample {
    pub lambda: f64,
    pub seed: u64,
    pub value: Complex64,
    pub grid_n: usize,
    /// Grid-doubling delta for this λ (measured on its first seed), NaN when
    /// refinement is off.
    pub refinement_delta: f64,
}

/// Fitted decay law |T| ≈ prefactor·λ^{−exponent}.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    /// (λ, mean |T| over seeds) series, all λ.
    pub samples: Vec<(f64, f64)>,
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    /// λ's excluded from the fit as within noise_factor× of the noise floor.
    pub excluded_points: usize,
    pub raw: Vec<DecaySample>,
}

fn slot_domain(system: &PhaseSystem, j: usize) -> (f64, f64) {
    // Period 4× the phase range width, centered, so wrap-around stays far
    // from the composed values.
    let (lo, hi) = system.phase_range(j, 64);
    let width = (hi - lo).max(1e-6);
    let period = 4.0 * width;
    let offset = 0.5 * (lo + hi) - 0.5 * period;
    (period, offset)
}

fn build_inputs(
    system: &PhaseSystem,
    family: DecayFamily,
    lambda: f64,
    seed: u64,
    max_modes: usize,
) -> Result<[FourierFunction1D; 4]> {
    match family {
        DecayFamily::BandlimitedRandom => {
            let mut out = Vec::with_capacity(4);
            for j in 0..4 {
                let (period, offset) = slot_domain(system, j);
                let band = if j == 0 { Band::Annulus } else { Band::Lowpass };
                out.push(synth_bandlimited(
                    period,
                    offset,
                    lambda,
                    band,
                    seed.wrapping_mul(4).wrapping_add(j as u64),
                )?);
            }
            Ok(out.try_into().unwrap())
        }
        DecayFamily::Resonant => {
            // F = (t, t, −t, 0); windows are bumps covering each phase range.
            let fs: [Polynomial1D; 4] = [
                Polynomial1D::new(vec![0.0, 1.0]),
                Polynomial1D::new(vec![0.0, 1.0]),
                Polynomial1D::new(vec![0.0, -1.0]),
                Polynomial1D::zero(),
            ];
            let mut out = Vec::with_capacity(4);
            for (j, fpoly) in fs.iter().enumerate() {
                let (lo, hi) = system.phase_range(j, 64);
                let center = 0.5 * (lo + hi);
                let radius = 0.75 * (hi - lo);
                out.push(crate::signals::modulated_exp(
                    lambda, fpoly, center, radius, max_modes,
                )?);
            }
            Ok(out.try_into().unwrap())
        }
        DecayFamily::Chirp => {
            let (lo, hi) = system.phase_range(0, 64);
            let y_max = lo.abs().max(hi.abs()).max(1e-3);
            // |instantaneous frequency| = 2β|y| ≤ λ on the range.
            let beta = lambda / (2.0 * y_max);
            let mut out = vec![crate::signals::chirp(beta, (lo, hi))?];
            for j in 1..4 {
                let (period, offset) = slot_domain(system, j);
                out.push(synth_bandlimited(
                    period,
                    offset,
                    lambda,
                    Band::Lowpass,
                    seed.wrapping_mul(4).wrapping_add(j as u64),
                )?);
            }
            Ok(out.try_into().unwrap())
        }
    }
}

/// Fit a (λ, |T|, noise) series: points with |T| ≤ noise_factor·noise are
/// excluded; refuses when too few remain.
pub fn fit_decay_series(
    series: &[(f64, f64, f64)],
    noise_factor: f64,
    min_points: usize,
) -> Result<(f64, f64, f64, usize)> {
    let usable: Vec<(f64, f64)> = series
        .iter()
        .filter(|(_, t, noise)| !noise.is_finite() || *t > noise_factor * noise)
        .map(|&(l, t, _)| (l, t))
        .collect();
    let excluded = series.len() - usable.len();
    if usable.len() < min_points {
        return Err(Error::FitRefused(format!(
            "{} of {} sweep points are above the noise floor, need {}",
            usable.len(),
            series.len(),
            min_points
        )));
    }
    let f = fit::fit_loglog(&usable, min_points)?;
    Ok((-f.slope, f.prefactor(), f.r_squared, excluded))
}

/// Run a sweep over increasing λ ≥ 16, averaging |T| over seeds per λ, and
/// fit the decay exponent.
pub fn decay_sweep(
    system: &PhaseSystem,
    family: DecayFamily,
    lambdas: &[f64],
    seeds: &[u64],
    config: &DecaySweepConfig,
) -> Result<DecayFit> {
    if lambdas.is_empty() || seeds.is_empty() {
        return Err(Error::Precondition("empty lambda or seed list".into()));
    }
    for w in lambdas.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Precondition("lambdas must be strictly increasing".into()));
        }
    }
    if lambdas[0] < 16.0 {
        return Err(Error::Precondition(format!(
            "lambdas must be >= 16, got {}",
            lambdas[0]
        )));
    }

    let mut raw = Vec::new();
    let mut series = Vec::new();
    for &lambda in lambdas {
        let mut abs_sum = 0.0;
        let mut noise = f64::NAN;
        for (si, &seed) in seeds.iter().enumerate() {
            let inputs = build_inputs(system, family, lambda, seed, config.max_modes)?;
            let refs = [&inputs[0], &inputs[1], &inputs[2], &inputs[3]];
            let n = required_resolution(system, &refs, config.oversampling);
            let grid = GridSpec::new(n.max(32), config.oversampling)?;
            let fv = if config.measure_refinement && si == 0 {
                evaluate_form_refined(system, &refs, grid)?
            } else {
                evaluate_form(system, &refs, grid)?
            };
            if si == 0 {
                noise = fv.refinement_delta;
            }
            abs_sum += fv.value.norm();
            raw.push(DecaySample {
                lambda,
                seed,
                value: fv.value,
                grid_n: grid.points_per_axis,
                refinement_delta: fv.refinement_delta,
            });
        }
        series.push((lambda, abs_sum / seeds.len() as f64, noise));
    }
    let (exponent, prefactor, r_squared, excluded_points) =
        fit_decay_series(&series, config.noise_factor, config.min_fit_points)?;
    Ok(DecayFit {
        samples: series.iter().map(|&(l, t, _)| (l, t)).collect(),
        exponent,
        prefactor,
        r_squared,
        excluded_points,
        raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_half_power_fit_is_exact() {
        let series: Vec<(f64, f64, f64)> = [16.0, 32.0, 64.0, 128.0, 256.0]
            .iter()
            .map(|&l: &f64| (l, l.powf(-0.5), f64::NAN))
            .collect();
        let (exp, pre, r2, excl) = fit_decay_series(&series, 10.0, 4).unwrap();
        assert!((exp - 0.5).abs() < 1e-12);
        assert!((pre - 1.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
        assert_eq!(excl, 0);
    }

    #[test]
    fn all_below_noise_floor_refused() {
        let series: Vec<(f64, f64, f64)> =
            (0..6).map(|i| (16.0 * (i + 1) as f64, 1e-12, 1e-10)).collect();
        assert!(matches!(
            fit_decay_series(&series, 10.0, 4),
            Err(Error::FitRefused(_))
        ));
    }

    #[test]
    fn lambda_preconditions() {
        let sys = crate::reference::linear_system();
        let cfg = DecaySweepConfig::default();
        assert!(decay_sweep(&sys, DecayFamily::Resonant, &[8.0, 16.0], &[1], &cfg).is_err());
        assert!(decay_sweep(&sys, DecayFamily::Resonant, &[32.0, 16.0], &[1], &cfg).is_err());
    }
}
