use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use trustgate_core::decision::{
    sweep_penalty, sweep_thresholds, write_penalty_csv, write_threshold_csv, SweepParams,
};

use crate::config::CliConfig;
use crate::evaluate::load_catalog;
use crate::Status;

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// Trust value and rank across upper thresholds (no history by default).
    Thresholds(SweepArgs),
    /// Same sweep with 0..=n-max failures (T1 = 0.4, T2 = 0.9 by default).
    Penalty(PenaltyArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated sensitive values to sweep.
    #[arg(long, default_value = "0.1577,0.0353,0.0248")]
    s: String,
    /// Lower trust threshold, held fixed.
    #[arg(long, default_value_t = 0.3)]
    lower: f64,
    /// First upper threshold of the grid.
    #[arg(long, default_value_t = 0.51)]
    upper_min: f64,
    /// Last upper threshold of the grid.
    #[arg(long, default_value_t = 1.0)]
    upper_max: f64,
    /// Grid spacing.
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// High-rank login ratio; requires --t2.
    #[arg(long, requires = "t2")]
    t1: Option<f64>,
    /// PIN success ratio; requires --t1.
    #[arg(long, requires = "t1")]
    t2: Option<f64>,
    /// Catalog JSON bounding the sensitivity scale; defaults to the built-in table.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Output CSV path; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PenaltyArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Trial budget; sweeps n = 0..=n_max.
    #[arg(long)]
    n_max: Option<u32>,
    /// Sweep without the default history shift.
    #[arg(long, conflicts_with_all = ["t1", "t2"])]
    no_history: bool,
}

fn parse_samples(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().with_context(|| format!("bad sensitive value {s:?}")))
        .collect()
}

fn params(args: &SweepArgs) -> Result<SweepParams> {
    let mut p = SweepParams {
        s_values: parse_samples(&args.s)?,
        lower: args.lower,
        upper_min: args.upper_min,
        upper_max: args.upper_max,
        step: args.step,
        ..SweepParams::default()
    };
    if let (Some(t1), Some(t2)) = (args.t1, args.t2) {
        p = p.with_history(t1, t2);
    }
    Ok(p)
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?))
        }
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn run(cmd: &SimulateCommand, config: &CliConfig) -> Result<Status> {
    match cmd {
        SimulateCommand::Thresholds(args) => {
            let catalog = load_catalog(args.catalog.as_ref(), config)?;
            let rows = sweep_thresholds(&catalog, &params(args)?)?;
            let mut out = output(args.out.as_ref())?;
            write_threshold_csv(&rows, &mut out)?;
            out.flush()?;
        }
        SimulateCommand::Penalty(args) => {
            let catalog = load_catalog(args.sweep.catalog.as_ref(), config)?;
            let mut p = params(&args.sweep)?;
            if p.stats.is_none() && !args.no_history {
                p = p.with_history(0.4, 0.9);
            }
            p.max_failures = config.max_failures(args.n_max);
            let rows = sweep_penalty(&catalog, &p)?;
            let mut out = output(args.sweep.out.as_ref())?;
            write_penalty_csv(&rows, &mut out)?;
            out.flush()?;
        }
    }
    Ok(Status::Ok)
}
