//! Phase-system configuration: a sectioned key-value text format (TOML).
//!
//! A system is either one of the shipped reference systems, by name, or an
//! inline description: per-phase lists of (i, j, coefficient) triples, ball
//! center and radii, cutoff parameters.
//!
//! ```toml
//! [system]
//! name = "curved"            # reference lookup; or give phases inline:
//!
//! [system.ball]
//! center = [0.0, 0.0]
//! radius = 0.5
//! outer_radius = 0.75
//!
//! [system.cutoff]
//! center = [0.0, 0.0]
//! radius = 0.45
//!
//! [[system.phase]]
//! terms = [[1, 0, 1.0]]      # φ₁ = x₁
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_geometry::poly::BivariatePolynomial;
use crate::phase_geometry::{Ball, Cutoff, PhaseMap, PhaseSystem, Point2};
use crate::reference;

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct SystemConfig {
    /// Reference-system name; inline fields below override nothing when set.
    pub name: Option<String>,
    pub ball: Option<BallConfig>,
    pub cutoff: Option<CutoffConfig>,
    #[serde(default, rename = "phase")]
    pub phases: Vec<PhaseConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BallConfig {
    pub center: [f64; 2],
    pub radius: f64,
    pub outer_radius: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutoffConfig {
    pub center: Option<[f64; 2]>,
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhaseConfig {
    /// (i, j, coefficient) triples for Σ c·x₁^i·x₂^j.
    pub terms: Vec<(u32, u32, f64)>,
}

impl SystemConfig {
    pub fn build(&self) -> Result<PhaseSystem> {
        if let Some(name) = &self.name {
            return reference::by_name(name)
                .ok_or_else(|| Error::Config(format!("unknown reference system '{name}'")));
        }
        if self.phases.len() != 4 {
            return Err(Error::Config(format!(
                "system.phase: need exactly 4 phases, got {}",
                self.phases.len()
            )));
        }
        let ball_cfg = self
            .ball
            .as_ref()
            .ok_or_else(|| Error::Config("system.ball: missing".into()))?;
        let center = Point2::new(ball_cfg.center[0], ball_cfg.center[1])?;
        let ball = Ball::new(
            center,
            ball_cfg.radius,
            ball_cfg.outer_radius.unwrap_or(1.5 * ball_cfg.radius),
        )?;
        let cutoff = match &self.cutoff {
            Some(c) => {
                let cc = c
                    .center
                    .map(|a| Point2::new(a[0], a[1]))
                    .transpose()?
                    .unwrap_or(center);
                Cutoff::new(cc, c.radius.unwrap_or(0.9 * ball.radius))?
            }
            None => Cutoff::new(center, 0.9 * ball.radius)?,
        };
        let mut phases = Vec::with_capacity(4);
        for (idx, p) in self.phases.iter().enumerate() {
            let poly = BivariatePolynomial::from_terms(&p.terms)
                .map_err(|e| Error::Config(format!("system.phase[{idx}].terms: {e}")))?;
            phases.push(PhaseMap::new(poly));
        }
        let phases: [PhaseMap; 4] = phases
            .try_into()
            .map_err(|_| Error::Config("system.phase: need exactly 4".into()))?;
        PhaseSystem::new(phases, ball, cutoff, "inline")
    }
}

/// Parse a TOML document holding a `[system]` section.
pub fn system_from_toml(text: &str) -> Result<PhaseSystem> {
    #[derive(Deserialize)]
    struct Doc {
        system: SystemConfig,
    }
    let doc: Doc =
        toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))?;
    doc.system.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_by_name() {
        let sys = system_from_toml("[system]\nname = \"linear\"\n").unwrap();
        assert_eq!(sys.name, "linear");
    }

    #[test]
    fn inline_system_roundtrip() {
        let text = r#"
[system]
[system.ball]
center = [0.0, 0.0]
radius = 0.5

[system.cutoff]
radius = 0.4

[[system.phase]]
terms = [[1, 0, 1.0]]
[[system.phase]]
terms = [[0, 1, 1.0]]
[[system.phase]]
terms = [[1, 0, 1.0], [0, 1, 1.0]]
[[system.phase]]
terms = [[1, 0, 1.0], [0, 1, -1.0]]
"#;
        let sys = system_from_toml(text).unwrap();
        assert!((sys.ball.outer_radius - 0.75).abs() < 1e-15);
        assert!((sys.cutoff.radius - 0.4).abs() < 1e-15);
    }

    #[test]
    fn malformed_config_names_offending_key() {
        // Three phases only.
        let text = r#"
[system]
[system.ball]
center = [0.0, 0.0]
radius = 0.5
[[system.phase]]
terms = [[1, 0, 1.0]]
[[system.phase]]
terms = [[0, 1, 1.0]]
[[system.phase]]
terms = [[1, 0, 1.0]]
"#;
        let err = system_from_toml(text).unwrap_err().to_string();
        assert!(err.contains("system.phase"), "{err}");

        // Unparsable TOML reports position info.
        let err = system_from_toml("[system\n").unwrap_err().to_string();
        assert!(err.contains("parse error"), "{err}");
    }
}
