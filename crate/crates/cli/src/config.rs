//! JSON run configuration: parsing, validation with key-level diagnostics,
//! and conversion into the core types.
//!
//! Angles appear in the file in degrees and are converted to radians here;
//! every length is in millimetres.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use cfsphere_core::{
    ArchitectureParams, EstimateConfig, LegPair, ShellBounds, ValidationConfig, Vec3,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid value for {key}: {reason}")]
    Invalid { key: &'static str, reason: String },
}

fn invalid(key: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key,
        reason: reason.into(),
    }
}

/// The on-disk schema. Unknown keys anywhere are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub architecture: ArchitectureSection,
    pub scenario: ScenarioSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateSection>,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchitectureSection {
    pub r_f_mm: f64,
    pub r_m_mm: f64,
    pub gamma_f_deg: f64,
    pub gamma_m_deg: f64,
    pub r_c_mm: f64,
    pub z0_mm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    /// Rodrigues parameters of the fixed moving-platform orientation.
    pub c: [f64; 3],
    pub r3_mm: f64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    pub delta_r_mm: f64,
    pub n_s: usize,
    #[serde(default)]
    pub pairs: PairSelection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_inner_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_outer_mm: Option<f64>,
}

fn default_delta() -> f64 {
    0.1
}

/// Either the literal string `"all"` or an explicit list of `[i, j]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairSelection {
    Keyword(String),
    Listed(Vec<[u8; 2]>),
}

impl Default for PairSelection {
    fn default() -> Self {
        PairSelection::Keyword("all".to_owned())
    }
}

impl PairSelection {
    fn resolve(&self) -> Result<Vec<LegPair>, ConfigError> {
        match self {
            PairSelection::Keyword(word) if word == "all" => Ok(LegPair::all()),
            PairSelection::Keyword(word) => Err(invalid(
                "scenario.pairs",
                format!("expected \"all\" or a list of [i, j] pairs, got \"{word}\""),
            )),
            PairSelection::Listed(list) => {
                if list.is_empty() {
                    return Err(invalid("scenario.pairs", "pair list must not be empty"));
                }
                let mut pairs = Vec::with_capacity(list.len());
                for &[i, j] in list {
                    pairs.push(
                        LegPair::new(i, j)
                            .map_err(|e| invalid("scenario.pairs", e.to_string()))?,
                    );
                }
                pairs.sort_unstable();
                pairs.dedup();
                Ok(pairs)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateSection {
    pub n_directions: usize,
    pub r_max_mm: f64,
    pub tol_mm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Directory for every artifact; created on demand.
    pub dir: PathBuf,
    pub summary_json: String,
    pub samples_csv: String,
    pub unsafe_csv: String,
    pub estimate_json: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: PathBuf::from("out"),
            summary_json: "summary.json".to_owned(),
            samples_csv: "samples.csv".to_owned(),
            unsafe_csv: "unsafe.csv".to_owned(),
            estimate_json: "estimate.json".to_owned(),
        }
    }
}

/// A parsed and fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// The file exactly as given, for echoing into summaries.
    pub file: RunConfigFile,
    pub validation: ValidationConfig,
    pub estimate: Option<EstimateConfig>,
}

fn require_positive(key: &'static str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(key, format!("must be positive, got {v}")))
    }
}

impl ArchitectureSection {
    fn resolve(&self) -> Result<ArchitectureParams, ConfigError> {
        require_positive("architecture.r_f_mm", self.r_f_mm)?;
        require_positive("architecture.r_m_mm", self.r_m_mm)?;
        require_positive("architecture.r_c_mm", self.r_c_mm)?;
        require_positive("architecture.z0_mm", self.z0_mm)?;
        for (key, v) in [
            ("architecture.gamma_f_deg", self.gamma_f_deg),
            ("architecture.gamma_m_deg", self.gamma_m_deg),
        ] {
            if !(v > 0.0 && v < 60.0) {
                return Err(invalid(key, format!("must lie in (0, 60) degrees, got {v}")));
            }
        }
        ArchitectureParams::new(
            self.r_f_mm,
            self.r_m_mm,
            self.gamma_f_deg.to_radians(),
            self.gamma_m_deg.to_radians(),
            self.r_c_mm,
            self.z0_mm,
        )
        .map_err(|e| invalid("architecture", e.to_string()))
    }
}

/// Parses a JSON run configuration, rejecting unknown keys, missing fields,
/// and out-of-range values with a diagnostic naming the offending key.
pub fn parse_config(text: &[u8]) -> Result<RunConfig, ConfigError> {
    let file: RunConfigFile = serde_json::from_slice(text)?;

    let arch = file.architecture.resolve()?;
    let scenario = &file.scenario;
    require_positive("scenario.r3_mm", scenario.r3_mm)?;
    require_positive("scenario.delta_r_mm", scenario.delta_r_mm)?;
    if !(scenario.delta > 0.0 && scenario.delta < 1.0) {
        return Err(invalid(
            "scenario.delta",
            format!("must lie in (0, 1), got {}", scenario.delta),
        ));
    }
    if scenario.n_s == 0 {
        return Err(invalid("scenario.n_s", "must be at least 1"));
    }
    if !scenario.c.iter().all(|v| v.is_finite()) {
        return Err(invalid("scenario.c", "components must be finite"));
    }
    let pairs = scenario.pairs.resolve()?;

    let shell_bounds = match (scenario.r_inner_mm, scenario.r_outer_mm) {
        (None, None) => None,
        (Some(r_inner), Some(r_outer)) => {
            require_positive("scenario.r_inner_mm", r_inner)?;
            if r_outer <= r_inner {
                return Err(invalid(
                    "scenario.r_outer_mm",
                    format!("must exceed r_inner_mm, got {r_outer} <= {r_inner}"),
                ));
            }
            Some(ShellBounds { r_inner, r_outer })
        }
        (Some(_), None) => {
            return Err(invalid(
                "scenario.r_outer_mm",
                "required when r_inner_mm is given",
            ))
        }
        (None, Some(_)) => {
            return Err(invalid(
                "scenario.r_inner_mm",
                "required when r_outer_mm is given",
            ))
        }
    };

    let orientation = Vec3::new(scenario.c[0], scenario.c[1], scenario.c[2]);
    let validation = ValidationConfig {
        arch,
        orientation,
        cfs_radius: scenario.r3_mm,
        shell_delta: scenario.delta,
        radial_step: scenario.delta_r_mm,
        samples_per_sphere: scenario.n_s,
        pairs: pairs.clone(),
        shell_bounds,
    };

    let estimate = match &file.estimate {
        None => None,
        Some(section) => {
            if section.n_directions == 0 {
                return Err(invalid("estimate.n_directions", "must be at least 1"));
            }
            require_positive("estimate.r_max_mm", section.r_max_mm)?;
            if !(section.tol_mm > 0.0 && section.tol_mm < section.r_max_mm) {
                return Err(invalid(
                    "estimate.tol_mm",
                    format!(
                        "must lie in (0, r_max_mm), got {} with r_max_mm {}",
                        section.tol_mm, section.r_max_mm
                    ),
                ));
            }
            Some(EstimateConfig {
                arch,
                orientation,
                n_directions: section.n_directions,
                r_max: section.r_max_mm,
                tol: section.tol_mm,
                pairs,
            })
        }
    };

    Ok(RunConfig {
        file,
        validation,
        estimate,
    })
}
