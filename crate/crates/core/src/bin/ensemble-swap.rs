// Copyright 2026 The ensemble-swap Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ensemble_swap::config::{parse_config_for, Experiment, RunConfig};
use ensemble_swap::params::UnitConvention;
use ensemble_swap::run::run;

/// Run one ensemble-mediated swap experiment and write its results.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// swap, truth-table, conversion, fig2-sweep, rwa, units-report or oracle-check.
    experiment: String,
    /// Config file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default: `out` key, else `results/<experiment>`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the config's unit convention.
    #[arg(long)]
    units: Option<String>,
    /// Worker threads for sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

fn load(cli: &Cli) -> ensemble_swap::Result<RunConfig> {
    let experiment: Experiment = cli.experiment.parse()?;
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut cfg = parse_config_for(&text, experiment)?;
    if let Some(u) = &cli.units {
        cfg.units = u.parse::<UnitConvention>()?;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> ensemble_swap::Result<bool> {
    let cfg = load(cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| ensemble_swap::Error::Config(format!("thread pool: {e}")))?;
    let output = pool.install(|| run(&cfg))?;

    let dir = cli
        .out
        .clone()
        .or_else(|| cfg.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results").join(cfg.experiment.name()));
    output.write(&dir, cfg.plot_data)?;
    print!("{}", output.results_text());
    println!("output_dir={}", dir.display());
    Ok(output.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: {} check failed", cli.experiment);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
