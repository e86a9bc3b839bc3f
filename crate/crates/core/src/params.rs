//! The ordered parameter ladder shared by every experiment.
//!
//! The constants are chosen in a fixed order — γ first, then τ₀, then
//! ρ₀, δ₀, δ₁, δ₃, δ₄, the per-slot δ*'s, and finally ρ — with each later
//! constant small relative to the earlier ones. δ₂ and δ₅ are determined by
//! the others, never chosen; they are exposed only as fit outputs elsewhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default)]
pub struct ParameterLadder {
    pub gamma: f64,
    pub tau0: f64,
    pub rho0: f64,
    pub rho: f64,
    pub delta0: f64,
    pub delta1: f64,
    pub delta3: f64,
    pub delta4: f64,
    pub delta_star: [f64; 4],
    /// Constant C in the constraint C·δ₃ + δ₄ < τ₀/2.
    pub c_delta3: f64,
}

impl Default for ParameterLadder {
    fn default() -> Self {
        Self {
            gamma: 0.75,
            tau0: 0.10,
            rho0: 0.05,
            rho: 0.02,
            delta0: 0.01,
            delta1: 0.008,
            delta3: 0.004,
            delta4: 0.004,
            delta_star: [0.01; 4],
            c_delta3: 1.0,
        }
    }
}

impl ParameterLadder {
    /// Validate every ordering constraint, naming the specific inequality
    /// that fails.
    pub fn validate(&self) -> Result<()> {
        let l = self;
        let fail = |ineq: &str| Err(Error::Config(format!("parameter ladder violates {ineq}")));
        if !(l.gamma > 0.5 && l.gamma < 1.0) {
            return fail(&format!("gamma in (1/2, 1): gamma = {}", l.gamma));
        }
        if !(l.tau0 > 0.0) {
            return fail(&format!("tau0 > 0: tau0 = {}", l.tau0));
        }
        if !(l.gamma + l.tau0 < 1.0) {
            return fail(&format!(
                "gamma + tau0 < 1: {} + {} = {}",
                l.gamma,
                l.tau0,
                l.gamma + l.tau0
            ));
        }
        if !(l.rho0 > 0.0) {
            return fail(&format!("rho0 > 0: rho0 = {}", l.rho0));
        }
        if !(l.tau0 + l.gamma + l.rho0 < 1.0) {
            return fail(&format!(
                "tau0 + gamma + rho0 < 1: sum = {}",
                l.tau0 + l.gamma + l.rho0
            ));
        }
        if !(l.rho > 0.0 && l.rho <= l.rho0) {
            return fail(&format!("rho in (0, rho0]: rho = {}, rho0 = {}", l.rho, l.rho0));
        }
        if !(l.rho < l.tau0 / 4.0) {
            return fail(&format!("rho < tau0/4: rho = {}, tau0/4 = {}", l.rho, l.tau0 / 4.0));
        }
        if !(l.delta0 > 0.0) {
            return fail(&format!("delta0 > 0: delta0 = {}", l.delta0));
        }
        if !(l.delta1 > 0.0 && l.delta1 <= l.delta0) {
            return fail(&format!(
                "delta3 < delta1 <= delta0: delta1 = {}, delta0 = {}",
                l.delta1, l.delta0
            ));
        }
        if !(l.delta3 > 0.0 && l.delta3 < l.delta1) {
            return fail(&format!(
                "delta3 < delta1 <= delta0: delta3 = {}, delta1 = {}",
                l.delta3, l.delta1
            ));
        }
        if !(l.delta4 > 0.0 && l.delta4 < l.gamma) {
            return fail(&format!("0 < delta4 < gamma: delta4 = {}", l.delta4));
        }
        if !(l.c_delta3 * l.delta3 + l.delta4 < l.tau0 / 2.0) {
            return fail(&format!(
                "C*delta3 + delta4 < tau0/2: {} + {} vs {}",
                l.c_delta3 * l.delta3,
                l.delta4,
                l.tau0 / 2.0
            ));
        }
        for (i, d) in l.delta_star.iter().enumerate() {
            if !(*d > 0.0 && *d <= l.delta0) {
                return fail(&format!(
                    "0 < delta_star[{}] <= delta0: value = {}",
                    i + 1,
                    d
                ));
            }
        }
        Ok(())
    }

    /// The stationarity threshold exponent γ + τ₀ + ρ.
    pub fn stationarity_exponent(&self) -> f64 {
        self.gamma + self.tau0 + self.rho
    }

    /// The sublevel bridge scale exponent −(1 − γ − τ₀ − ρ).
    pub fn bridge_eps_exponent(&self) -> f64 {
        -(1.0 - self.gamma - self.tau0 - self.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ladder_is_valid() {
        ParameterLadder::default().validate().unwrap();
    }

    #[test]
    fn violations_name_the_inequality() {
        let mut l = ParameterLadder::default();
        l.gamma = 0.4;
        let err = l.validate().unwrap_err().to_string();
        assert!(err.contains("gamma in (1/2, 1)"), "{err}");

        let mut l = ParameterLadder::default();
        l.tau0 = 0.30;
        let err = l.validate().unwrap_err().to_string();
        assert!(err.contains("gamma + tau0 < 1"), "{err}");

        let mut l = ParameterLadder::default();
        l.rho = 0.04; // exceeds tau0/4 = 0.025
        let err = l.validate().unwrap_err().to_string();
        assert!(err.contains("rho < tau0/4"), "{err}");

        let mut l = ParameterLadder::default();
        l.delta3 = 0.009; // exceeds delta1
        let err = l.validate().unwrap_err().to_string();
        assert!(err.contains("delta3 < delta1"), "{err}");

        let mut l = ParameterLadder::default();
        l.delta4 = 0.05; // C*delta3 + delta4 >= tau0/2
        let err = l.validate().unwrap_err().to_string();
        assert!(err.contains("C*delta3 + delta4 < tau0/2"), "{err}");
    }
}
