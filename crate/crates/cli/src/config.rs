use std::path::Path;

use arithcap::patching::PatchConfig;
use arithcap::potential::PotentialConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Every tunable of a run. Loaded from `--config`, then overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub potential: PotentialConfig,
    pub patch: PatchConfig,
    /// Taylor coefficients kept past the leading one.
    pub jet_order: usize,
    /// Sample count for checks that scan points.
    pub samples: usize,
    pub measure_nodes: usize,
    /// Truncation order of family members; `16·deg p` when absent.
    pub family_order: Option<usize>,
    /// Upper limit for the exponent search.
    pub search_cap: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            potential: PotentialConfig::default(),
            patch: PatchConfig::default(),
            jet_order: 8,
            samples: 64,
            measure_nodes: 256,
            family_order: None,
            search_cap: 1 << 16,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("config: {e}")))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let p = &self.potential;
        let positive = [
            ("potential.source_offset", p.source_offset),
            ("potential.residual_threshold", p.residual_threshold),
            ("potential.mass_tolerance", p.mass_tolerance),
            ("potential.vanishing_tolerance", p.vanishing_tolerance),
            (
                "potential.boundary_zero_threshold",
                p.boundary_zero_threshold,
            ),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if p.resolution < 16 {
            return Err(CliError::Usage(format!(
                "potential.resolution must be at least 16, got {}",
                p.resolution
            )));
        }
        let counts = [
            ("patch.grid", self.patch.grid),
            ("patch.max_degree", self.patch.max_degree),
            ("samples", self.samples),
            ("measure_nodes", self.measure_nodes),
            ("jet_order", self.jet_order),
            ("family_order", self.family_order.unwrap_or(1)),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
        }
        if self.patch.denominator_limit == 0 || self.search_cap == 0 {
            return Err(CliError::Usage(
                "patch.denominator_limit and search_cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&text).unwrap(), c);
    }

    #[test]
    fn partial_file_fills_defaults() {
        let c: ExperimentConfig =
            serde_json::from_str(r#"{"potential": {"resolution": 128}, "samples": 10}"#).unwrap();
        assert_eq!(c.potential.resolution, 128);
        assert_eq!(c.potential.source_offset, 0.4);
        assert_eq!(c.samples, 10);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = ExperimentConfig::default();
        c.potential.resolution = 8;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::default();
        c.potential.mass_tolerance = -1.0;
        assert!(c.validate().is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }
}
