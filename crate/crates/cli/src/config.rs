// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a TOML document with `model`, `initial`, `grid`,
//! `oracle`, `output` and (for sweeps) `sweep` sections. Unknown keys are
//! rejected everywhere.
//!
//! ```toml
//! model.kind = "band-gap"
//! model.gamma1 = 1.0
//! model.gamma2 = 1.0
//! model.lambda1 = 50.0
//! model.lambda2 = 5.0
//! initial.family = "phi"
//! initial.alpha = 0.7071067811865476
//! grid.t_max = 50.0
//! grid.n = 5001
//! ```

use std::path::Path;

use entdyn_core::{BandGapDip, BellFamily, BellLikeInit, DetunedLorentzian, SpectralModel};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 16;

/// Oracle step used when none is configured.
pub const DEFAULT_ORACLE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Lorentzian,
    BandGap,
}

/// Model parameters as written; which fields are required depends on `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Phi,
    Psi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub family: FamilyName,
    pub alpha: f64,
    #[serde(default)]
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    #[serde(default)]
    pub enabled: bool,
    #[serde(default = "default_oracle_step")]
    pub step: f64,
}

impl Default for OracleSection {
    fn default() -> Self {
        Self {
            enabled: false,
            step: DEFAULT_ORACLE_STEP,
        }
    }
}

fn default_oracle_step() -> f64 {
    DEFAULT_ORACLE_STEP
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// File stem, resolved against the output directory when relative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Parameters a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "model.gamma")]
    Gamma,
    #[serde(rename = "model.lambda")]
    Lambda,
    #[serde(rename = "model.delta")]
    Delta,
    #[serde(rename = "model.gamma1")]
    Gamma1,
    #[serde(rename = "model.gamma2")]
    Gamma2,
    #[serde(rename = "model.lambda1")]
    Lambda1,
    #[serde(rename = "model.lambda2")]
    Lambda2,
    #[serde(rename = "initial.alpha")]
    Alpha,
    #[serde(rename = "initial.delta")]
    Phase,
}

impl SweepParameter {
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::Gamma => "model.gamma",
            SweepParameter::Lambda => "model.lambda",
            SweepParameter::Delta => "model.delta",
            SweepParameter::Gamma1 => "model.gamma1",
            SweepParameter::Gamma2 => "model.gamma2",
            SweepParameter::Lambda1 => "model.lambda1",
            SweepParameter::Lambda2 => "model.lambda2",
            SweepParameter::Alpha => "initial.alpha",
            SweepParameter::Phase => "initial.delta",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// A parsed but not yet validated configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSection,
    pub initial: InitialSection,
    pub grid: GridSection,
    #[serde(default)]
    pub oracle: OracleSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

/// A configuration whose physics has been checked.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: SpectralModel,
    pub initial: BellLikeInit,
    pub t_max: f64,
    pub n: usize,
    /// Oracle step when the cross-check is on.
    pub oracle_step: Option<f64>,
}

impl RunConfig {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks the grid, builds the model (enforcing its positivity
    /// conditions) and the initial state.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let model = self.model.build()?;
        let family = match self.initial.family {
            FamilyName::Phi => BellFamily::Phi,
            FamilyName::Psi => BellFamily::Psi,
        };
        let initial = BellLikeInit::new(family, self.initial.alpha, self.initial.delta)?;
        if !(self.grid.t_max.is_finite() && self.grid.t_max > 0.0) {
            return Err(CliError::Config(format!("grid.t_max must be positive (got {})", self.grid.t_max)));
        }
        if self.grid.n < MIN_SAMPLES {
            return Err(CliError::Config(format!(
                "grid.n must be at least {MIN_SAMPLES} (got {})",
                self.grid.n
            )));
        }
        let oracle_step = if self.oracle.enabled {
            Some(self.oracle.step)
        } else {
            None
        };
        Ok(Scenario {
            model,
            initial,
            t_max: self.grid.t_max,
            n: self.grid.n,
            oracle_step,
        })
    }

    /// Copy of this configuration with the sweep axis set to `value`.
    pub fn with_parameter(&self, parameter: SweepParameter, value: f64) -> Result<Self, CliError> {
        let mut out = self.clone();
        out.sweep = None;
        let slot = match parameter {
            SweepParameter::Gamma => &mut out.model.gamma,
            SweepParameter::Lambda => &mut out.model.lambda,
            SweepParameter::Delta => &mut out.model.delta,
            SweepParameter::Gamma1 => &mut out.model.gamma1,
            SweepParameter::Gamma2 => &mut out.model.gamma2,
            SweepParameter::Lambda1 => &mut out.model.lambda1,
            SweepParameter::Lambda2 => &mut out.model.lambda2,
            SweepParameter::Alpha => {
                out.initial.alpha = value;
                return Ok(out);
            }
            SweepParameter::Phase => {
                out.initial.delta = value;
                return Ok(out);
            }
        };
        *slot = Some(value);
        out.model.check_fields()?;
        Ok(out)
    }
}

impl ModelSection {
    pub fn lorentzian(gamma: f64, lambda: f64, delta: f64) -> Self {
        Self {
            kind: ModelKind::Lorentzian,
            gamma: Some(gamma),
            lambda: Some(lambda),
            delta: Some(delta),
            gamma1: None,
            gamma2: None,
            lambda1: None,
            lambda2: None,
        }
    }

    pub fn band_gap(gamma1: f64, gamma2: f64, lambda1: f64, lambda2: f64) -> Self {
        Self {
            kind: ModelKind::BandGap,
            gamma: None,
            lambda: None,
            delta: None,
            gamma1: Some(gamma1),
            gamma2: Some(gamma2),
            lambda1: Some(lambda1),
            lambda2: Some(lambda2),
        }
    }

    fn fields(&self) -> [(&'static str, Option<f64>, ModelKind); 7] {
        use ModelKind::*;
        [
            ("gamma", self.gamma, Lorentzian),
            ("lambda", self.lambda, Lorentzian),
            ("delta", self.delta, Lorentzian),
            ("gamma1", self.gamma1, BandGap),
            ("gamma2", self.gamma2, BandGap),
            ("lambda1", self.lambda1, BandGap),
            ("lambda2", self.lambda2, BandGap),
        ]
    }

    /// Rejects keys that belong to the other model kind. `delta` defaults
    /// to zero; every other parameter of the chosen kind is required.
    fn check_fields(&self) -> Result<(), CliError> {
        let kind_name = match self.kind {
            ModelKind::Lorentzian => "lorentzian",
            ModelKind::BandGap => "band-gap",
        };
        for (name, value, owner) in self.fields() {
            if owner != self.kind && value.is_some() {
                return Err(CliError::Config(format!("model.{name} is not a parameter of kind '{kind_name}'")));
            }
            if owner == self.kind && value.is_none() && name != "delta" {
                return Err(CliError::Config(format!("model.{name} is required for kind '{kind_name}'")));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<SpectralModel, CliError> {
        self.check_fields()?;
        let get = |v: Option<f64>| v.unwrap_or(0.0);
        Ok(match self.kind {
            ModelKind::Lorentzian => {
                DetunedLorentzian::new(get(self.gamma), get(self.lambda), get(self.delta))?.into()
            }
            ModelKind::BandGap => BandGapDip::new(
                get(self.gamma1),
                get(self.gamma2),
                get(self.lambda1),
                get(self.lambda2),
            )?
            .into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = r#"
        model.kind = "band-gap"
        model.gamma1 = 1.0
        model.gamma2 = 1.0
        model.lambda1 = 50.0
        model.lambda2 = 5.0
        initial.family = "phi"
        initial.alpha = 0.7071067811865476
        grid.t_max = 50.0
        grid.n = 5001
    "#;

    #[test]
    fn parses_dotted_keys() {
        let cfg = RunConfig::parse(FIG2, "fig2").unwrap();
        assert_eq!(cfg.model.kind, ModelKind::BandGap);
        assert_eq!(cfg.grid.n, 5001);
        assert!(!cfg.oracle.enabled);
        assert_eq!(cfg.oracle.step, DEFAULT_ORACLE_STEP);
        let s = cfg.scenario().unwrap();
        assert!(matches!(s.model, SpectralModel::BandGapDip(_)));
        assert!(s.oracle_step.is_none());
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = format!("{FIG2}\nmodel.gama1 = 2.0\n");
        let err = RunConfig::parse(&text, "cfg").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("gama1"), "{err}");
        let text = format!("{FIG2}\n[extra]\nx = 1\n");
        assert_eq!(RunConfig::parse(&text, "cfg").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn parse_errors_carry_the_line() {
        let err = RunConfig::parse("model.kind = \n", "bad.toml").unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("bad.toml"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn gap_inversion_names_the_center_condition() {
        let text = FIG2.replace("model.gamma2 = 1.0", "model.gamma2 = 1.5");
        let err = RunConfig::parse(&text, "cfg").unwrap().scenario().unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("Γ₁ ≥ Γ₂"), "{err}");
    }

    #[test]
    fn cross_kind_parameters_are_rejected() {
        let text = format!("{FIG2}\nmodel.gamma = 1.0\n");
        let err = RunConfig::parse(&text, "cfg").unwrap().scenario().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let text = FIG2.replace("model.lambda2 = 5.0", "");
        let err = RunConfig::parse(&text, "cfg").unwrap().scenario().unwrap_err();
        assert!(err.to_string().contains("model.lambda2 is required"), "{err}");
    }

    #[test]
    fn grid_and_state_are_validated() {
        let small = FIG2.replace("grid.n = 5001", "grid.n = 15");
        assert_eq!(RunConfig::parse(&small, "c").unwrap().scenario().unwrap_err().exit_code(), 2);
        let alpha = FIG2.replace("initial.alpha = 0.7071067811865476", "initial.alpha = 1.5");
        assert_eq!(RunConfig::parse(&alpha, "c").unwrap().scenario().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = RunConfig::parse(FIG2, "fig2").unwrap();
        assert_eq!(RunConfig::parse(&cfg.to_toml(), "again").unwrap(), cfg);
    }

    #[test]
    fn sweep_axis_overrides_a_single_field() {
        let text = format!("{FIG2}\nsweep.parameter = \"model.gamma2\"\nsweep.values = [1.0, 0.5]\n");
        let cfg = RunConfig::parse(&text, "c").unwrap();
        let point = cfg.with_parameter(SweepParameter::Gamma2, 0.5).unwrap();
        assert_eq!(point.model.gamma2, Some(0.5));
        assert!(point.sweep.is_none());
        assert!(cfg.with_parameter(SweepParameter::Delta, 0.5).is_err());
    }
}
