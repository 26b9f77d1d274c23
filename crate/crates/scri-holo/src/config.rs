//! JSON experiment configuration with a strict, versioned schema.
//!
//! Unknown fields are rejected and every run echoes the effective
//! configuration into its outputs, so every reported number is reproducible
//! from the config file and the seed alone.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::geometry::CutFunction;
use crate::grid::{SphereGrid, UGrid};
use crate::source::BulkSource;

pub const SCHEMA: &str = "scri-holo/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_u: usize,
    /// Window bounds; omitted bounds are auto-sized to the source support.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_max: Option<f64>,
}

impl GridSpec {
    pub fn resolve(&self, source: &BulkSource) -> Result<(Arc<SphereGrid>, UGrid)> {
        let sphere = SphereGrid::new(self.n_theta, self.n_phi)?;
        let (auto_lo, auto_hi) = if source.terms.is_empty() {
            (-12.0, 12.0)
        } else {
            let (lo, hi) = source.u_support();
            (lo - 0.5, hi + 0.5)
        };
        let u_min = self.u_min.unwrap_or(auto_lo);
        let u_max = self.u_max.unwrap_or(auto_hi);
        Ok((sphere, UGrid::new(u_min, u_max, self.n_u)?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CutSpec {
    Constant { value: f64 },
    Apex { t: f64, x: [f64; 3] },
    Harmonic { coeffs: Vec<f64> },
}

impl CutSpec {
    pub fn build(&self) -> CutFunction {
        match self {
            CutSpec::Constant { value } => CutFunction::Constant(*value),
            CutSpec::Apex { t, x } => CutFunction::Apex { t: *t, x: *x },
            CutSpec::Harmonic { coeffs } => CutFunction::HarmonicSum {
                coeffs: coeffs.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationSpec {
    pub profile: CutSpec,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirchhoffSpec {
    pub v_values: Vec<f64>,
    pub nodes_per_axis: usize,
}

impl Default for KirchhoffSpec {
    fn default() -> Self {
        KirchhoffSpec {
            v_values: vec![50.0, 100.0, 200.0],
            nodes_per_axis: 32,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StressSpec {
    pub v: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_u: usize,
    pub nodes_per_axis: usize,
}

impl Default for StressSpec {
    fn default() -> Self {
        StressSpec {
            v: 200.0,
            n_theta: 8,
            n_phi: 16,
            n_u: 385,
            nodes_per_axis: 24,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub s: f64,
}

impl Default for FlowSpec {
    fn default() -> Self {
        FlowSpec { s: 0.05 }
    }
}

fn default_seed() -> u64 {
    7
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: String,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub grid: GridSpec,
    pub source: BulkSource,
    pub conformal: ConformalFactor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<DeformationSpec>,
    #[serde(default)]
    pub kirchhoff: KirchhoffSpec,
    #[serde(default)]
    pub stress: StressSpec,
    #[serde(default)]
    pub flow: FlowSpec,
}

impl ExperimentConfig {
    pub fn from_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("{e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA {
            return Err(Error::Config(format!(
                "unsupported schema '{}', expected '{SCHEMA}'",
                self.schema
            )));
        }
        self.conformal.validate()?;
        if let Some(d) = &self.deformation {
            if !d.t_min.is_finite() || !d.t_max.is_finite() || d.t_max <= d.t_min {
                return Err(Error::Config(
                    "deformation needs a finite t range with t_max > t_min".into(),
                ));
            }
            if d.steps < 5 {
                return Err(Error::Config("deformation needs at least 5 steps".into()));
            }
        }
        if self.kirchhoff.v_values.iter().any(|&v| v <= 0.0) {
            return Err(Error::Config("kirchhoff v values must be positive".into()));
        }
        if self.kirchhoff.nodes_per_axis < 8 || self.stress.nodes_per_axis < 8 {
            return Err(Error::Config(
                "quadrature needs at least 8 nodes per axis".into(),
            ));
        }
        if self.stress.v <= 0.0 {
            return Err(Error::Config("stress v must be positive".into()));
        }
        for term in &self.source.terms {
            let tw = match term.time {
                crate::source::TimeProfile::Gaussian { width, .. }
                | crate::source::TimeProfile::Bump { width, .. } => width,
            };
            let sw = match term.space {
                crate::source::SpaceProfile::Gaussian { width, .. }
                | crate::source::SpaceProfile::Bump { width, .. } => width,
            };
            if tw <= 0.0 || sw <= 0.0 {
                return Err(Error::Config("source widths must be positive".into()));
            }
        }
        Ok(())
    }

    /// Example configuration used by the demos.
    pub fn demo() -> Self {
        ExperimentConfig {
            schema: SCHEMA.into(),
            seed: 7,
            grid: GridSpec {
                n_theta: 32,
                n_phi: 64,
                n_u: 1024,
                u_min: None,
                u_max: None,
            },
            source: BulkSource::single_gaussian(1.0, 0.5, 0.7, [0.4, -0.3, 0.2], 0.9),
            conformal: ConformalFactor::One,
            cut: Some(CutSpec::Constant { value: -2.0 }),
            deformation: Some(DeformationSpec {
                profile: CutSpec::Harmonic {
                    coeffs: vec![1.0, 0.0, 0.25, 0.0],
                },
                t_min: 0.0,
                t_max: 1.0,
                steps: 21,
            }),
            kirchhoff: KirchhoffSpec::default(),
            stress: StressSpec::default(),
            flow: FlowSpec::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo_config_round_trips() {
        let cfg = ExperimentConfig::demo();
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = ExperimentConfig::from_str(&text).unwrap();
        assert_eq!(back.schema, SCHEMA);
        assert_eq!(back.seed, cfg.seed);
        assert_eq!(back.grid.n_u, 1024);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"schema":"scri-holo/1","grid":{"n_theta":8,"n_phi":16,"n_u":128},
            "source":{"terms":[]},"conformal":{"kind":"one"},"surprise":1}"#;
        let err = ExperimentConfig::from_str(text).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");
    }

    #[test]
    fn missing_grid_is_schema_error() {
        let text = r#"{"schema":"scri-holo/1","source":{"terms":[]},"conformal":{"kind":"one"}}"#;
        let err = ExperimentConfig::from_str(text).unwrap_err();
        match err {
            Error::Config(msg) => assert!(msg.contains("grid"), "message: {msg}"),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn schema_version_enforced() {
        let text = r#"{"schema":"scri-holo/2","grid":{"n_theta":8,"n_phi":16,"n_u":128},
            "source":{"terms":[]},"conformal":{"kind":"one"}}"#;
        assert!(ExperimentConfig::from_str(text).is_err());
    }

    #[test]
    fn auto_window_covers_source_support() {
        let cfg = ExperimentConfig::demo();
        let (_, ugrid) = cfg.grid.resolve(&cfg.source).unwrap();
        let (lo, hi) = cfg.source.u_support();
        assert!(ugrid.u_min <= lo && ugrid.u_max >= hi);
    }
}
