use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use urlab_core::inequalities::{run_suite, CheckerKind, SuiteOptions};
use urlab_core::tol::Tolerances;

use crate::output::{print_report_table, Format, RecordSink};
use crate::problem::parse_problem;

/// Run inequality checkers over a problem file.
#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Problem file (JSON).
    pub problem: PathBuf,
    /// Comma-separated checker names (default: all applicable).
    #[arg(long, value_delimiter = ',')]
    pub checkers: Vec<String>,
    /// Slack tolerance override.
    #[arg(long, allow_negative_numbers = true)]
    pub tol_slack: Option<f64>,
    /// Cap on enumerated three-observable combinations (0 = pairs only).
    #[arg(long)]
    pub max_triples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Machine-record destination (defaults to stderr for json/csv).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn parse_checkers(names: &[String]) -> Result<Vec<CheckerKind>> {
    names
        .iter()
        .map(|n| n.parse::<CheckerKind>().map_err(|e| anyhow::anyhow!(e)))
        .collect()
}

pub fn run(args: &CheckArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.problem)?;
    let pf = parse_problem(&text)?;
    let state = pf.build_matrix_state()?;
    let observables = pf.build_observables()?;
    if observables.is_empty() {
        bail!("problem file has no observables");
    }
    let mut tol = Tolerances::default();
    if let Some(t) = args.tol_slack.or(pf.options.tol_slack) {
        tol.slack = t;
    }
    if let Some(t) = pf.options.tol_compat {
        tol.compat = t;
    }
    let options = SuiteOptions {
        checkers: parse_checkers(&args.checkers)?,
        max_triples: args.max_triples.or(pf.options.max_triples).unwrap_or(usize::MAX),
        tol,
    };
    let reports = run_suite(&state, &observables, &options)?;
    print_report_table(&reports);
    let mut sink = RecordSink::new(args.format, args.output.as_ref())?;
    for r in &reports {
        sink.emit_report(r)?;
    }
    let violations = reports.iter().filter(|r| !r.satisfied).count();
    println!(
        "\n{} checks, {} violated, {} degenerate",
        reports.len(),
        violations,
        reports.iter().filter(|r| r.degenerate.is_some()).count()
    );
    Ok(if violations == 0 { 0 } else { 2 })
}
