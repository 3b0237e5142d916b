// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Executes a scenario and renders its outputs.
//!
//! Rendering is separate from writing so that sweeps can compute points in
//! parallel and hand finished byte buffers to a single writer.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use entdyn_core::entanglement::{self, Trajectory};
use entdyn_core::volterra::{self, GridAmplitude, SolverConfig};
use entdyn_core::{bell_like_state, AmplitudeFn};
use serde::Serialize;

use crate::config::{RunConfig, Scenario, SweepParameter};
use crate::error::CliError;

pub const CSV_HEADER: &str = "t,re_q,im_q,abs_q2,K1,K2,C";
pub const ORACLE_CSV_HEADER: &str = "t,re_q,im_q";

/// Event summary written next to each trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventReport {
    pub esd_time: Option<f64>,
    pub revivals: Vec<[f64; 2]>,
    pub plateau: Option<f64>,
    pub oracle_max_deviation: Option<f64>,
    pub regime: Option<&'static str>,
}

/// Everything a single run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub trajectory: Trajectory,
    pub oracle: Option<GridAmplitude>,
    pub report: EventReport,
}

/// Computes the trajectory, its events, and the oracle cross-check when the
/// scenario asks for one.
pub fn execute(scenario: &Scenario) -> Result<RunOutput, CliError> {
    let amplitude = scenario.model.amplitude()?;
    let initial = bell_like_state(&scenario.initial);
    let trajectory = entanglement::simulate(&initial, &amplitude, scenario.t_max, scenario.n)?;

    let (oracle, deviation) = match scenario.oracle_step {
        Some(step) => {
            let (grid, dev) = oracle_check(&amplitude, step, scenario.t_max)?;
            (Some(grid), Some(dev))
        }
        None => (None, None),
    };

    let report = EventReport {
        esd_time: trajectory.esd_time,
        revivals: trajectory.revivals.iter().map(|r| [r.death, r.rebirth]).collect(),
        plateau: trajectory.plateau,
        oracle_max_deviation: deviation,
        regime: scenario.model.regime().map(|r| r.label()),
    };
    Ok(RunOutput {
        trajectory,
        oracle,
        report,
    })
}

/// Solves the memory equation for the model's kernel and returns the grid
/// together with `max |q_analytic − q_oracle|` over it.
pub fn oracle_check(amplitude: &AmplitudeFn, step: f64, t_max: f64) -> Result<(GridAmplitude, f64), CliError> {
    let model = amplitude.model();
    let cfg = SolverConfig::new(step, t_max)?;
    let grid = volterra::solve(|tau| model.kernel(tau), &cfg)?;
    let deviation = grid.max_deviation(|t| amplitude.eval(t));
    Ok((grid, deviation))
}

pub fn trajectory_csv(trajectory: &Trajectory) -> String {
    let mut out = String::with_capacity(128 * (trajectory.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &trajectory.samples {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t,
            s.q.re,
            s.q.im,
            s.q.norm_sqr(),
            s.k1,
            s.k2,
            s.c
        )
        .expect("writing to a String");
    }
    out
}

pub fn oracle_csv(grid: &GridAmplitude) -> String {
    let mut out = String::with_capacity(72 * (grid.len() + 1));
    out.push_str(ORACLE_CSV_HEADER);
    out.push('\n');
    for (t, q) in grid.times.iter().zip(&grid.values) {
        writeln!(out, "{:.16e},{:.16e},{:.16e}", t, q.re, q.im).expect("writing to a String");
    }
    out
}

pub fn report_json(report: &EventReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Rendered files of one run, keyed by suffix relative to the stem.
#[derive(Debug, Clone)]
pub struct RenderedRun {
    pub report: EventReport,
    pub files: Vec<(String, String)>,
}

pub fn render(output: &RunOutput) -> RenderedRun {
    let mut files = vec![
        (".csv".to_string(), trajectory_csv(&output.trajectory)),
        (".json".to_string(), report_json(&output.report)),
    ];
    if let Some(grid) = &output.oracle {
        files.push(("-oracle.csv".to_string(), oracle_csv(grid)));
    }
    RenderedRun {
        report: output.report.clone(),
        files,
    }
}

/// Writes each rendered file as `<stem><suffix>`; returns the paths in order.
pub fn write_rendered(stem: &Path, rendered: &RenderedRun) -> Result<Vec<PathBuf>, CliError> {
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut written = Vec::with_capacity(rendered.files.len());
    for (suffix, body) in &rendered.files {
        let mut name = stem.as_os_str().to_os_string();
        name.push(suffix);
        let path = PathBuf::from(name);
        std::fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// Output stem for `cfg`: `output.path` (or `fallback`) under `out_dir`
/// unless it is absolute.
pub fn output_stem(cfg: &RunConfig, out_dir: &Path, fallback: &str) -> PathBuf {
    let stem = cfg.output.path.as_deref().unwrap_or(fallback);
    out_dir.join(stem)
}

/// One row of the combined sweep table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub report: EventReport,
}

pub const SWEEP_HEADER: &str = "parameter,value,esd_time,revival_count,plateau";

pub fn sweep_csv(parameter: SweepParameter, rows: &[SweepRow]) -> String {
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.16e}")).unwrap_or_default();
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(
            out,
            "{},{:.16e},{},{},{}",
            parameter.key(),
            row.value,
            opt(row.report.esd_time),
            row.report.revivals.len(),
            opt(row.report.plateau)
        )
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::preset;

    #[test]
    fn csv_has_fixed_header_and_full_precision() {
        let mut cfg = preset("fig1-d0").unwrap();
        cfg.grid.n = 16;
        let out = execute(&cfg.scenario().unwrap()).unwrap();
        let csv = trajectory_csv(&out.trajectory);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 7);
        assert_eq!(first[0], "0.0000000000000000e0");
        assert_eq!(first[1], "1.0000000000000000e0");
        assert_eq!(csv.lines().count(), 17);
    }

    #[test]
    fn report_json_has_the_documented_keys() {
        let report = EventReport {
            esd_time: Some(1.5),
            revivals: vec![[2.0, 3.0]],
            plateau: None,
            oracle_max_deviation: None,
            regime: Some("strong"),
        };
        let v: serde_json::Value = serde_json::from_str(&report_json(&report)).unwrap();
        assert_eq!(v["esd_time"], 1.5);
        assert_eq!(v["revivals"][0][1], 3.0);
        assert!(v["plateau"].is_null());
        assert!(v["oracle_max_deviation"].is_null());
        assert_eq!(v["regime"], "strong");
    }

    #[test]
    fn regime_is_reported_only_for_resonant_cavities() {
        let mut d0 = preset("fig1-d0").unwrap();
        d0.grid.n = 32;
        assert_eq!(execute(&d0.scenario().unwrap()).unwrap().report.regime, Some("strong"));
        let mut d2 = preset("fig1-d2").unwrap();
        d2.grid.n = 32;
        assert_eq!(execute(&d2.scenario().unwrap()).unwrap().report.regime, None);
    }

    #[test]
    fn sweep_table_leaves_missing_events_blank() {
        let rows = [SweepRow {
            value: 0.5,
            report: EventReport {
                esd_time: None,
                revivals: vec![],
                plateau: Some(0.25),
                oracle_max_deviation: None,
                regime: None,
            },
        }];
        let csv = sweep_csv(SweepParameter::Gamma2, &rows);
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "model.gamma2,5.0000000000000000e-1,,0,2.5000000000000000e-1"
        );
    }
}
