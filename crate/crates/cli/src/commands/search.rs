use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde_json::json;
use urlab_core::commutant::{brute_force_cc_max, tightened_bound, SearchOptions, SearchResult};
use urlab_core::measures::UprValue;
use urlab_core::qcore::QuantumState;

use crate::output::{Format, RecordSink};
use crate::problem::{matrix_to_rows, parse_problem};

/// Search the effective commutants of B and A for the partners that
/// maximize the squared CC, tightening the (A, B) UPR bound.
#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Problem file (JSON).
    pub problem: PathBuf,
    /// Label of observable A.
    #[arg(long)]
    pub a: String,
    /// Label of observable B.
    #[arg(long)]
    pub b: String,
    /// Random-oracle sample count (0 disables the oracle comparison).
    #[arg(long, default_value_t = 0)]
    pub oracle_samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Restrict to the operator commutant instead of the effective one.
    #[arg(long)]
    pub strict: bool,
    /// Cap on the state dimension.
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn describe(direction: &str, r: &SearchResult) {
    println!("  {direction}:");
    println!("    k_squared       = {:.12}", r.k_squared);
    println!("    tightened_rhs   = {:.12}", r.tightened_rhs);
    println!("    upr_lower_bound = {:.12}", 1.0 / (1.0 - r.k_squared).max(0.0).sqrt());
    println!("    compat_residual = {:.3e}", r.compat_residual);
    if let Some(n) = &r.note {
        println!("    note: {n}");
    }
    println!("    partner (rows):");
    let m = r.partner.matrix();
    for i in 0..m.nrows() {
        let row: Vec<String> =
            (0..m.ncols()).map(|j| format!("{:+.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im)).collect();
        println!("      [{}]", row.join(", "));
    }
}

fn record(direction: &str, r: &SearchResult) -> serde_json::Value {
    json!({
        "direction": direction,
        "k_squared": r.k_squared,
        "tightened_rhs": r.tightened_rhs,
        "upr_lower_bound": 1.0 / (1.0 - r.k_squared).max(0.0).sqrt(),
        "compat_residual": r.compat_residual,
        "method": r.method,
        "samples": r.samples,
        "note": r.note,
        "partner": matrix_to_rows(r.partner.matrix()),
    })
}

pub fn run(args: &SearchArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.problem)?;
    let pf = parse_problem(&text)?;
    let state: QuantumState = pf.build_matrix_state()?;
    let observables = pf.build_observables()?;
    let a = pf.find_observable(&observables, &args.a)?;
    let b = pf.find_observable(&observables, &args.b)?;

    let mut options = SearchOptions { strict: args.strict, ..Default::default() };
    if let Some(cap) = args.max_dim.or(pf.options.max_dim) {
        options.dim_cap = cap;
    }
    let bound = tightened_bound(&state, &a, &b, &options)?;

    match bound.upr {
        UprValue::Value(v) => println!("UPR({}, {}) = {:.12}", args.a, args.b, v),
        UprValue::Unconstrained => {
            println!("UPR({}, {}) unconstrained: <[A,B]> = 0", args.a, args.b)
        }
    }
    describe(&format!("partner of {} (correlates with {})", args.b, args.a), &bound.via_b_commutant);
    describe(&format!("partner of {} (correlates with {})", args.a, args.b), &bound.via_a_commutant);

    let mut sink = RecordSink::new(args.format, args.output.as_ref())?;
    sink.emit_value(&record("partner_of_b", &bound.via_b_commutant))?;
    sink.emit_value(&record("partner_of_a", &bound.via_a_commutant))?;

    let samples = if args.oracle_samples > 0 {
        args.oracle_samples
    } else {
        pf.options.oracle_samples.unwrap_or(0)
    };
    if samples > 0 {
        let seed = args.seed.or(pf.options.seed).unwrap_or(0);
        let oracle_b = brute_force_cc_max(&state, &a, &b, samples, seed)?;
        let oracle_a = brute_force_cc_max(&state, &b, &a, samples, seed.wrapping_add(1))?;
        println!("random oracle ({samples} samples):");
        println!(
            "  partner of {}: k_squared = {:.12} (closed form {:.12})",
            args.b, oracle_b.k_squared, bound.via_b_commutant.k_squared
        );
        println!(
            "  partner of {}: k_squared = {:.12} (closed form {:.12})",
            args.a, oracle_a.k_squared, bound.via_a_commutant.k_squared
        );
        sink.emit_value(&record("oracle_partner_of_b", &oracle_b))?;
        sink.emit_value(&record("oracle_partner_of_a", &oracle_a))?;
    }
    Ok(0)
}
