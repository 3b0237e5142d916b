// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: presets, single runs from a config file, and
//! one-axis parameter sweeps. Each run writes a trajectory CSV, an event
//! summary JSON and, with the oracle enabled, the oracle grid.

pub mod config;
pub mod error;
pub mod preset;
pub mod run;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::RunConfig;
pub use error::CliError;
pub use run::{EventReport, RunOutput};

use run::{render, write_rendered, RenderedRun, SweepRow};

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub out_dir: PathBuf,
    /// Enables the oracle cross-check regardless of the config.
    pub force_oracle: bool,
}

/// Files written by a command plus the per-point reports.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub reports: Vec<EventReport>,
}

fn apply_options(mut cfg: RunConfig, opts: &Options) -> RunConfig {
    if opts.force_oracle {
        cfg.oracle.enabled = true;
    }
    cfg
}

fn run_one(cfg: &RunConfig) -> Result<RenderedRun, CliError> {
    let output = run::execute(&cfg.scenario()?)?;
    Ok(render(&output))
}

fn run_to_stem(cfg: RunConfig, opts: &Options, fallback: &str) -> Result<Outcome, CliError> {
    let cfg = apply_options(cfg, opts);
    if cfg.sweep.is_some() {
        return Err(CliError::Config("config has a [sweep] section; use the sweep command".into()));
    }
    let rendered = run_one(&cfg)?;
    let files = write_rendered(&run::output_stem(&cfg, &opts.out_dir, fallback), &rendered)?;
    Ok(Outcome {
        files,
        reports: vec![rendered.report],
    })
}

pub fn run_preset(name: &str, opts: &Options) -> Result<Outcome, CliError> {
    run_to_stem(preset::preset(name)?, opts, name)
}

fn config_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trajectory".to_string())
}

pub fn run_config(path: &Path, opts: &Options) -> Result<Outcome, CliError> {
    run_to_stem(RunConfig::load(path)?, opts, &config_stem(path))
}

/// Runs every point of the sweep axis in parallel, then writes
/// `<stem>-NNN.*` per point and `<stem>-sweep.csv` in axis order.
pub fn run_sweep(path: &Path, opts: &Options) -> Result<Outcome, CliError> {
    let cfg = apply_options(RunConfig::load(path)?, opts);
    let sweep = cfg
        .sweep
        .clone()
        .ok_or_else(|| CliError::Config("sweep needs a [sweep] section with parameter and values".into()))?;
    if sweep.values.is_empty() {
        return Err(CliError::Config("sweep.values is empty".into()));
    }
    let points = sweep
        .values
        .iter()
        .map(|&v| cfg.with_parameter(sweep.parameter, v))
        .collect::<Result<Vec<_>, _>>()?;
    // validate everything before spending time on any point
    for point in &points {
        point.scenario()?;
    }
    let rendered: Vec<Result<RenderedRun, CliError>> = points.par_iter().map(run_one).collect();

    let stem = run::output_stem(&cfg, &opts.out_dir, &config_stem(path));
    let mut outcome = Outcome::default();
    let mut rows = Vec::with_capacity(points.len());
    for (i, (value, result)) in sweep.values.iter().zip(rendered).enumerate() {
        let rendered = result?;
        let mut point_stem = stem.as_os_str().to_os_string();
        point_stem.push(format!("-{i:03}"));
        outcome.files.extend(write_rendered(Path::new(&point_stem), &rendered)?);
        rows.push(SweepRow {
            value: *value,
            report: rendered.report.clone(),
        });
        outcome.reports.push(rendered.report);
    }
    let mut table = stem.as_os_str().to_os_string();
    table.push("-sweep.csv");
    let table = PathBuf::from(table);
    std::fs::write(&table, run::sweep_csv(sweep.parameter, &rows)).map_err(|e| CliError::io(&table, e))?;
    outcome.files.push(table);
    Ok(outcome)
}
