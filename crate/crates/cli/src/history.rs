use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use chrono::{DateTime, Utc};
use clap::{Args, Subcommand};
use trustgate_core::history::append_jsonl;
use trustgate_core::{AuthEvent, AuthMethod, HistoryLog, Outcome, Rank};

use crate::config::CliConfig;
use crate::{AnomalyArgs, Status};

#[derive(Debug, Subcommand)]
pub enum HistoryCommand {
    /// Append one authentication event.
    Add(AddArgs),
    /// Print T1, T2, T3 and event counts for a user.
    Stats(StatsArgs),
    /// Check whether a user's PIN record has recently turned bad.
    Anomaly(AnomalyCmdArgs),
}

#[derive(Debug, Args)]
pub struct FileArgs {
    /// History JSONL file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// User the events belong to.
    #[arg(long, default_value = "default")]
    user: String,
}

impl FileArgs {
    fn path(&self, config: &CliConfig) -> Result<PathBuf> {
        match self.file.clone().or_else(|| config.history_path.clone()) {
            Some(p) => Ok(p),
            None => bail!("no history file: pass --file or set history_path in the config"),
        }
    }
}

#[derive(Debug, Args)]
pub struct AddArgs {
    #[command(flatten)]
    file: FileArgs,
    /// Service level label, e.g. `E`.
    #[arg(long)]
    level: String,
    /// high, medium or low.
    #[arg(long)]
    rank: Rank,
    /// none, pin or biometric; must match the rank when given.
    #[arg(long)]
    method: Option<AuthMethod>,
    /// success or failure.
    #[arg(long)]
    outcome: Outcome,
    /// RFC 3339 timestamp; now when omitted.
    #[arg(long)]
    ts: Option<DateTime<Utc>>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    file: FileArgs,
    /// Only the most recent N events.
    #[arg(long)]
    window: Option<usize>,
    /// Print the statistics as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
pub struct AnomalyCmdArgs {
    #[command(flatten)]
    file: FileArgs,
    #[command(flatten)]
    anomaly: AnomalyArgs,
}

fn ratio(r: Option<f64>) -> String {
    r.map_or_else(|| "n/a".to_string(), |v| format!("{v:.6}"))
}

pub fn run(cmd: &HistoryCommand, config: &CliConfig) -> Result<Status> {
    match cmd {
        HistoryCommand::Add(args) => {
            let path = args.file.path(config)?;
            let mut event = AuthEvent::new(
                args.ts.unwrap_or_else(Utc::now),
                args.file.user.clone(),
                args.level.clone(),
                args.rank,
                args.outcome,
            );
            if let Some(method) = args.method {
                event.method = method;
            }
            append_jsonl(&path, &event).with_context(|| format!("appending to {}", path.display()))?;
        }
        HistoryCommand::Stats(args) => {
            let path = args.file.path(config)?;
            if !path.exists() {
                println!("no history");
                return Ok(Status::Ok);
            }
            let log = HistoryLog::load(&path)?;
            match log.compute_stats(&args.file.user, args.window) {
                None => println!("no history"),
                Some(s) if args.json => println!("{}", serde_json::to_string_pretty(&s)?),
                Some(s) => {
                    println!("events = {}", s.total_events);
                    println!("pin_attempts = {}", s.pin_attempts);
                    println!("T1 = {:.6}", s.t1);
                    println!("T2 = {}", ratio(s.t2));
                    println!("T3 = {}", ratio(s.t3));
                }
            }
        }
        HistoryCommand::Anomaly(args) => {
            let path = args.file.path(config)?;
            let log = HistoryLog::load(&path)?;
            let report = log.detect_anomaly(&args.file.user, &config.anomaly(&args.anomaly.section()));
            println!("flagged = {}", if report.flagged { "yes" } else { "no" });
            println!("older_t2 = {} over {} events", ratio(report.older_t2), report.older_events);
            println!("recent_t2 = {} over {} events", ratio(report.recent_t2), report.recent_events);
            println!("{}", report.explanation);
        }
    }
    Ok(Status::Ok)
}
