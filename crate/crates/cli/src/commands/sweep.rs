use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use urlab_core::sweep::{run_sweep, SweepConfig};
use urlab_core::tol::Tolerances;

use crate::commands::check::parse_checkers;
use crate::output::{Format, RecordSink};

/// Seeded random-instance sweep over the inequality checkers.
#[derive(Args, Debug)]
pub struct SweepArgs {
    /// State dimensions to cycle through.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3, 4, 5, 6, 7, 8])]
    pub dims: Vec<usize>,
    /// Instances per checker.
    #[arg(long, default_value_t = 1000)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated checker names (default: all).
    #[arg(long, value_delimiter = ',')]
    pub checkers: Vec<String>,
    /// Slack tolerance for the satisfied flag.
    #[arg(long, allow_negative_numbers = true)]
    pub tol_slack: Option<f64>,
    /// Skip mixed-state instances.
    #[arg(long)]
    pub pure_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Dataset destination (defaults to stderr).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: &SweepArgs) -> Result<i32> {
    let mut tol = Tolerances::default();
    if let Some(t) = args.tol_slack {
        tol.slack = t;
    }
    let config = SweepConfig {
        dims: args.dims.clone(),
        instances: args.instances,
        seed: args.seed,
        checkers: parse_checkers(&args.checkers)?,
        include_mixed: !args.pure_only,
        tol,
    };
    let (records, summary) = run_sweep(&config)?;
    let mut sink = RecordSink::new(args.format, args.output.as_ref())?;
    for r in &records {
        sink.emit_sweep_record(r)?;
    }
    println!(
        "{:<24} {:>9} {:>15} {:>11} {:>11}",
        "checker", "instances", "min_rel_slack", "violations", "degenerate"
    );
    for c in &summary.per_checker {
        println!(
            "{:<24} {:>9} {:>15.3e} {:>11} {:>11}",
            c.checker.to_string(),
            c.instances,
            c.min_rel_slack,
            c.violations,
            c.degenerate
        );
    }
    Ok(if summary.all_satisfied { 0 } else { 2 })
}
