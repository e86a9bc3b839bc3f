//! Exact polynomial arithmetic: bivariate phases and univariate modulations.
//!
//! Coefficients live in `BTreeMap`s keyed by exponents, so differentiation is
//! a coefficient shuffle, products are exact convolutions, and iteration order
//! is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real bivariate polynomial Σ c_{ij} x₁^i x₂^j with finitely many terms.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), f64>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from (i, j, coefficient) triples; zero coefficients are dropped,
    /// repeated exponent pairs accumulate.
    pub fn from_terms(terms: &[(u32, u32, f64)]) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for &(i, j, c) in terms {
            if !c.is_finite() {
                return Err(Error::Config(format!(
                    "non-finite coefficient {c} at exponent ({i}, {j})"
                )));
            }
            *coeffs.entry((i, j)).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Ok(Self { coeffs })
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        // Exact monomial evaluation in deterministic term order.
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| c * x1.powi(i as i32) * x2.powi(j as i32))
            .sum()
    }

    /// Exact partial derivative: axis 0 for ∂/∂x₁, axis 1 for ∂/∂x₂.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&(i, j), &c) in &self.coeffs {
            let (e, rest) = if axis == 0 { (i, j) } else { (j, i) };
            if e == 0 {
                continue;
            }
            let key = if axis == 0 { (i - 1, j) } else { (i, j - 1) };
            let _ = rest;
            *coeffs.entry(key).or_insert(0.0) += c * e as f64;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&k, &c) in &other.coeffs {
            *coeffs.entry(k).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Self { coeffs }
    }

    pub fn scale(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, c * factor)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (&(i1, j1), &c1) in &self.coeffs {
            for (&(i2, j2), &c2) in &other.coeffs {
                *coeffs.entry((i1 + i2, j1 + j2)).or_insert(0.0) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| *c != 0.0);
        Self { coeffs }
    }

    /// Largest |coefficient|, 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn total_degree(&self) -> u32 {
        self.coeffs.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }
}

/// A real univariate polynomial Σ c_k t^k.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polynomial1D {
    coeffs: Vec<f64>,
}

impl Polynomial1D {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> f64 {
        // Horner, highest degree first.
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Max of |p| over [lo, hi], sampled at `n` midpoints plus both endpoints.
    pub fn sup_on(&self, lo: f64, hi: f64, n: usize) -> f64 {
        let mut m = self.eval(lo).abs().max(self.eval(hi).abs());
        for x in crate::util::midpoints(lo, hi, n) {
            m = m.max(self.eval(x).abs());
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derive() {
        // x₁ + x₂ + x₁²
        let p = BivariatePolynomial::from_terms(&[(1, 0, 1.0), (0, 1, 1.0), (2, 0, 1.0)]).unwrap();
        assert!((p.eval(0.1, 0.2) - 0.31).abs() < 1e-15);
        let d1 = p.derivative(0);
        assert!((d1.eval(0.1, 0.2) - 1.2).abs() < 1e-15);
        let d2 = p.derivative(1);
        assert!((d2.eval(0.1, 0.2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gradient_of_sum_is_sum_of_gradients() {
        let p = BivariatePolynomial::from_terms(&[(2, 1, 0.5), (1, 1, -2.0)]).unwrap();
        let q = BivariatePolynomial::from_terms(&[(0, 3, 1.5), (1, 0, 1.0)]).unwrap();
        let lhs = p.add(&q).derivative(0);
        let rhs = p.derivative(0).add(&q.derivative(0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_exact() {
        let p = BivariatePolynomial::from_terms(&[(1, 0, 2.0), (0, 1, 3.0)]).unwrap();
        let q = BivariatePolynomial::from_terms(&[(1, 0, 1.0), (0, 0, -1.0)]).unwrap();
        let r = p.mul(&q);
        // (2x + 3y)(x − 1) = 2x² + 3xy − 2x − 3y
        assert!((r.eval(0.7, -0.3) - (2.0 * 0.49 + 3.0 * 0.7 * -0.3 - 1.4 + 0.9)).abs() < 1e-15);
    }

    #[test]
    fn horner_matches_naive() {
        let p = Polynomial1D::new(vec![1.0, -2.0, 0.0, 4.0]);
        let t: f64 = 1.3;
        assert!((p.eval(t) - (1.0 - 2.0 * t + 4.0 * t * t * t)).abs() < 1e-12);
        let d = p.derivative();
        assert!((d.eval(t) - (-2.0 + 12.0 * t * t)).abs() < 1e-12);
    }
}
