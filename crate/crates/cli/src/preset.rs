// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Named scenarios.
//!
//! `fig1-*`: resonant-cavity family, Ψ state with α = 1/√3, λ = 0.1Γ,
//! detuning Δ ∈ {0, 2λ, 5λ, 8λ}, Γt ∈ [0, 15].
//! `fig2-*`: band-gap family, Φ Bell state, λ₁ = 50Γ₁, λ₂ = 5Γ₁,
//! Γ₂ ∈ {Γ₁, 2Γ₁/3, Γ₁/3, 0}, Γ₁t ∈ [0, 50].

use std::f64::consts::FRAC_1_SQRT_2;

use crate::config::{
    FamilyName, GridSection, InitialSection, ModelSection, OracleSection, OutputSection, RunConfig,
};
use crate::error::CliError;

pub const PRESET_NAMES: [&str; 8] = [
    "fig1-d0", "fig1-d2", "fig1-d5", "fig1-d8", "fig2-g1", "fig2-g23", "fig2-g13", "fig2-g0",
];

const FIG1_LAMBDA: f64 = 0.1;
const FIG1_T_MAX: f64 = 15.0;
const FIG1_SAMPLES: usize = 1501;
const FIG2_LAMBDA1: f64 = 50.0;
const FIG2_LAMBDA2: f64 = 5.0;
const FIG2_T_MAX: f64 = 50.0;
const FIG2_SAMPLES: usize = 5001;

fn fig1(detuning_in_widths: f64, name: &str) -> RunConfig {
    RunConfig {
        model: ModelSection::lorentzian(1.0, FIG1_LAMBDA, detuning_in_widths * FIG1_LAMBDA),
        initial: InitialSection {
            family: FamilyName::Psi,
            alpha: 1.0 / 3f64.sqrt(),
            delta: 0.0,
        },
        grid: GridSection {
            t_max: FIG1_T_MAX,
            n: FIG1_SAMPLES,
        },
        oracle: OracleSection::default(),
        output: OutputSection {
            path: Some(name.to_string()),
            ..OutputSection::default()
        },
        sweep: None,
    }
}

fn fig2(gamma2: f64, name: &str) -> RunConfig {
    RunConfig {
        model: ModelSection::band_gap(1.0, gamma2, FIG2_LAMBDA1, FIG2_LAMBDA2),
        initial: InitialSection {
            family: FamilyName::Phi,
            alpha: FRAC_1_SQRT_2,
            delta: 0.0,
        },
        grid: GridSection {
            t_max: FIG2_T_MAX,
            n: FIG2_SAMPLES,
        },
        oracle: OracleSection::default(),
        output: OutputSection {
            path: Some(name.to_string()),
            ..OutputSection::default()
        },
        sweep: None,
    }
}

/// Configuration of the named preset; its output stem is the name itself.
pub fn preset(name: &str) -> Result<RunConfig, CliError> {
    Ok(match name {
        "fig1-d0" => fig1(0.0, name),
        "fig1-d2" => fig1(2.0, name),
        "fig1-d5" => fig1(5.0, name),
        "fig1-d8" => fig1(8.0, name),
        "fig2-g1" => fig2(1.0, name),
        "fig2-g23" => fig2(2.0 / 3.0, name),
        "fig2-g13" => fig2(1.0 / 3.0, name),
        "fig2-g0" => fig2(0.0, name),
        _ => return Err(CliError::UnknownPreset(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_validates() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            cfg.scenario().unwrap();
            assert_eq!(cfg.output.path.as_deref(), Some(name));
        }
    }

    #[test]
    fn unknown_preset_is_a_config_error() {
        let err = preset("fig3").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("fig2-g0"));
    }

    #[test]
    fn fig1_detunings_are_multiples_of_the_width() {
        assert_eq!(preset("fig1-d5").unwrap().model.delta, Some(0.5));
        assert_eq!(preset("fig1-d8").unwrap().model.delta, Some(0.8));
    }
}
