use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use trustgate_core::decision::EngineConfig;
use trustgate_core::{AccessRequest, AuthDecision, DecisionEngine, HistoryLog, ServiceCatalog};

use crate::config::CliConfig;
use crate::{AnomalyArgs, Status};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Service level label from the catalog, e.g. `E`.
    #[arg(long)]
    level: String,
    /// Catalog JSON; defaults to the built-in nine-level table.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Lower trust threshold, at most 0.5.
    #[arg(long)]
    lower: Option<f64>,
    /// Upper trust threshold, above 0.5.
    #[arg(long)]
    upper: Option<f64>,
    /// History JSONL used for the T1/T2 threshold shift.
    #[arg(long)]
    history: Option<PathBuf>,
    /// User whose history is read.
    #[arg(long, default_value = "default")]
    user: String,
    /// Failed attempts so far in this session.
    #[arg(long, default_value_t = 0)]
    failures: u32,
    /// Trial budget before biometric lockout.
    #[arg(long)]
    n_max: Option<u32>,
    /// What a flagged history does: off, demote or force-low.
    #[arg(long)]
    anomaly_mode: Option<trustgate_core::decision::AnomalyMode>,
    #[command(flatten)]
    anomaly: AnomalyArgs,
    /// Print the full decision as JSON.
    #[arg(long)]
    json: bool,
}

pub fn load_catalog(flag: Option<&PathBuf>, config: &CliConfig) -> Result<ServiceCatalog> {
    match flag.or(config.catalog_path.as_ref()) {
        Some(path) => {
            ServiceCatalog::load(path).with_context(|| format!("loading catalog {}", path.display()))
        }
        None => Ok(ServiceCatalog::baseline()),
    }
}

pub fn run(args: &EvaluateArgs, config: &CliConfig) -> Result<Status> {
    let catalog = load_catalog(args.catalog.as_ref(), config)?;
    let log = match args.history.as_ref().or(config.history_path.as_ref()) {
        Some(path) => {
            HistoryLog::load(path).with_context(|| format!("loading history {}", path.display()))?
        }
        None => HistoryLog::new(),
    };
    let request = AccessRequest {
        user: args.user.clone(),
        level: args.level.clone(),
        thresholds: config.thresholds(args.lower, args.upper)?,
        max_failures: config.max_failures(args.n_max),
    };
    let engine = DecisionEngine::new(EngineConfig {
        anomaly: config.anomaly(&args.anomaly.section()),
        anomaly_mode: args.anomaly_mode.or(config.anomaly_mode).unwrap_or_default(),
        ..EngineConfig::default()
    });
    let decision = engine.evaluate_with_failures(&request, &catalog, &log, args.failures)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&decision)?);
    } else {
        print_decision(&decision, &catalog);
    }
    Ok(Status::Ok)
}

fn print_decision(d: &AuthDecision, catalog: &ServiceCatalog) {
    let name = catalog.get(&d.level).map(|e| e.name.as_str()).unwrap_or("");
    println!("level = {} ({name})", d.level);
    println!("sensitive_value = {:.8}", d.sensitive_value);
    println!("Y = {:.6}", d.y);
    println!("Y' = {:.6}", d.y_effective);
    println!(
        "failures = {} of {} (P = {:.6})",
        d.penalty.failures, d.penalty.max_failures, d.penalty.coefficient
    );
    match &d.stats {
        Some(s) => {
            println!("history = T1 {:.6}, T2 {}", s.t1, s.t2.map_or("n/a".to_string(), |t| format!("{t:.6}")))
        }
        None => println!("history = none"),
    }
    println!(
        "regions = [0, {:.6}) [{:.6}, {:.6}) [{:.6}, 1]",
        d.adjusted.lower, d.adjusted.lower, d.adjusted.upper, d.adjusted.upper
    );
    println!("anomaly = {} ({})", if d.anomaly.flagged { "yes" } else { "no" }, d.anomaly.explanation);
    if d.locked_out {
        println!("locked_out = yes");
    }
    println!("decision = {}, {}", d.rank.rank, d.rank.required_method);
}
