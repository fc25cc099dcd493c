//! `trustgate`: classify services, evaluate access requests, manage
//! authentication history and run threshold sweeps.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a
//! comparison matrix fails the consistency check.

mod classify;
mod config;
mod evaluate;
mod history;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{AnomalySection, CliConfig};

#[derive(Debug, Parser)]
#[command(
    name = "trustgate",
    version,
    about = "Service classification and adaptive authentication decisions"
)]
struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a sensitivity catalog from a pairwise comparison matrix.
    Classify(classify::ClassifyArgs),
    /// Decide which authentication method a request needs.
    Evaluate(evaluate::EvaluateArgs),
    /// Run an upper-threshold sweep and write CSV.
    #[command(subcommand)]
    Simulate(simulate::SimulateCommand),
    /// Append to or summarize an authentication history file.
    #[command(subcommand)]
    History(history::HistoryCommand),
}

/// Flags shared by every command that looks at anomaly detection.
#[derive(Debug, Clone, Default, Args)]
pub struct AnomalyArgs {
    /// PIN events in the recent window.
    #[arg(long)]
    recent_window: Option<usize>,
    /// Older-window PIN success ratio considered a good record.
    #[arg(long)]
    good_record: Option<f64>,
    /// Drop in PIN success ratio that raises the flag.
    #[arg(long)]
    drop: Option<f64>,
    /// Minimum PIN events required in each window.
    #[arg(long)]
    min_events: Option<usize>,
}

impl AnomalyArgs {
    fn section(&self) -> AnomalySection {
        AnomalySection {
            recent_window: self.recent_window,
            good_record: self.good_record,
            drop: self.drop,
            min_events: self.min_events,
        }
    }
}

pub enum Status {
    Ok,
    Rejected,
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let config = CliConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Classify(args) => classify::run(&args),
        Command::Evaluate(args) => evaluate::run(&args, &config),
        Command::Simulate(cmd) => simulate::run(&cmd, &config),
        Command::History(cmd) => history::run(&cmd, &config),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Rejected) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
