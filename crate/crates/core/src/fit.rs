//! Ordinary least squares on log-log axes, shared by every power-law and
//! decay-exponent fit in the crate.

use crate::error::{Error, Result};

/// Result of an OLS fit of log(y) against log(x).
#[derive(Debug, Clone, Copy)]
pub struct LogLogFit {
    /// Slope of log y vs log x.
    pub slope: f64,
    /// Intercept; prefactor is exp(intercept).
    pub intercept: f64,
    /// Coefficient of determination of the log-log regression.
    pub r_squared: f64,
    /// Points actually used (positive x and y).
    pub n_used: usize,
}

impl LogLogFit {
    pub fn prefactor(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Fit log(y) = slope·log(x) + intercept over the points with x > 0, y > 0.
///
/// Refuses with fewer than `min_points` usable points.
pub fn fit_loglog(points: &[(f64, f64)], min_points: usize) -> Result<LogLogFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len();
    if n < min_points {
        return Err(Error::FitRefused(format!(
            "{n} usable points, need at least {min_points}"
        )));
    }
    let nf = n as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let mx = sx / nf;
    let my = sy / nf;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::FitRefused("all abscissas equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    let ss_res: f64 = logs
        .iter()
        .map(|p| {
            let e = p.1 - (slope * p.0 + intercept);
            e * e
        })
        .sum();
    // A constant series is a perfect fit with slope 0.
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LogLogFit {
        slope,
        intercept,
        r_squared,
        n_used: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_recovered() {
        let pts: Vec<(f64, f64)> = (1..10).map(|k| (k as f64, 3.0 * (k as f64).powf(-0.5))).collect();
        let fit = fit_loglog(&pts, 4).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.prefactor() - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series_slope_zero() {
        let pts: Vec<(f64, f64)> = (1..8).map(|k| (k as f64, 2.0)).collect();
        let fit = fit_loglog(&pts, 4).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn refuses_too_few_points() {
        let pts = vec![(1.0, 1.0), (2.0, 0.0), (3.0, -1.0)];
        assert!(matches!(fit_loglog(&pts, 4), Err(Error::FitRefused(_))));
    }
}
