use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use trustgate_core::ahp::{analyze, io::parse_matrix, validate_matrix, ConsistencyReport};
use trustgate_core::Error;

use crate::Status;

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Comparison matrix: CSV (decimals or fractions like 1/3, optional
    /// header of names) or JSON with `names` and `upper` triangle.
    matrix: PathBuf,
    /// Service names, one per line, when the matrix file has none.
    #[arg(long)]
    names: Option<PathBuf>,
    /// Where to write the catalog JSON.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

pub fn print_report(r: &ConsistencyReport) {
    println!("order = {}", r.order);
    println!("lambda_max = {:.6}", r.lambda_max);
    println!("CI = {:.6}", r.ci);
    println!("RI = {:.6}", r.ri);
    println!("CR = {:.6}", r.cr);
    println!("accepted = {}", if r.accepted { "yes" } else { "no" });
}

pub fn run(args: &ClassifyArgs) -> Result<Status> {
    let text = std::fs::read_to_string(&args.matrix)
        .with_context(|| format!("reading {}", args.matrix.display()))?;
    let parsed = parse_matrix(&text)?;

    let names = match (&args.names, parsed.names) {
        (Some(path), _) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect(),
        (None, Some(names)) => names,
        (None, None) => bail!("no service names: add a header row or pass --names"),
    };

    let validation = validate_matrix(&parsed.matrix);
    for w in &validation.warnings {
        eprintln!("warning: entry ({}, {}) = {} is off the 1..9 scale", w.row + 1, w.col + 1, w.value);
    }

    match analyze(&parsed.matrix, &names) {
        Ok(result) => {
            print_report(&result.report);
            println!();
            println!("level,name,sensitive_value");
            for e in result.catalog.entries() {
                println!("{},{},{:.8}", e.level, e.name, e.sensitive_value);
            }
            if let Some(out) = &args.out {
                result.catalog.save(out).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(Status::Ok)
        }
        Err(Error::Inconsistent(report)) => {
            print_report(&report);
            eprintln!("comparison matrix rejected: CR >= 0.1, revise the judgements and retry");
            Ok(Status::Rejected)
        }
        Err(e) => Err(e.into()),
    }
}
