// Copyright 2026 The entdyn Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use entdyn_cli::{run_config, run_preset, run_sweep, Options, Outcome};

/// Two-qubit entanglement dynamics in structured zero-temperature reservoirs.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
struct Cli {
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Cross-check the analytic amplitude against the memory-equation solver.
    #[arg(long, global = true)]
    oracle: bool,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a named scenario (fig1-d0, fig1-d2, fig1-d5, fig1-d8, fig2-g1, fig2-g23, fig2-g13, fig2-g0).
    Preset { name: String },
    /// Run the scenario described by a TOML config.
    Run { config: PathBuf },
    /// Run a one-parameter sweep described by a TOML config.
    Sweep { config: PathBuf },
}

fn describe(outcome: &Outcome) {
    for path in &outcome.files {
        println!("wrote {}", path.display());
    }
    for report in &outcome.reports {
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "none".into());
        let mut line = format!(
            "esd_time={} revivals={} plateau={}",
            fmt(report.esd_time),
            report.revivals.len(),
            fmt(report.plateau)
        );
        if let Some(dev) = report.oracle_max_deviation {
            line.push_str(&format!(" oracle_max_deviation={dev:.3e}"));
        }
        println!("{line}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        out_dir: cli.out_dir,
        force_oracle: cli.oracle,
    };
    let result = match &cli.command {
        Command::Preset { name } => run_preset(name, &opts),
        Command::Run { config } => run_config(config, &opts),
        Command::Sweep { config } => run_sweep(config, &opts),
    };
    match result {
        Ok(outcome) => {
            if !cli.quiet {
                describe(&outcome);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
