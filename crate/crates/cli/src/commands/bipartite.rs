use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::Args;
use serde_json::json;
use urlab_core::bipartite::{
    kmax_squared_forms, optimal_partner_observable, projector_residue, schmidt_decompose,
};

use crate::output::{Format, RecordSink};
use crate::problem::{matrix_to_rows, parse_problem};

/// Schmidt-analyze a bipartite pure state and report the closed-form
/// maximum squared CC between A (factor 1) and any factor-2 observable.
#[derive(Args, Debug)]
pub struct BipartiteArgs {
    /// Problem file (JSON) with a pure state on d1*d2 and `factor_dims`.
    pub problem: PathBuf,
    /// Label of the factor-1 observable A.
    #[arg(long)]
    pub a: String,
    /// First factor dimension (overrides the file's `factor_dims`).
    #[arg(long)]
    pub d1: Option<usize>,
    /// Second factor dimension.
    #[arg(long)]
    pub d2: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(args: &BipartiteArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.problem)?;
    let pf = parse_problem(&text)?;
    let state = pf.build_matrix_state()?;
    let (d1, d2) = match (args.d1, args.d2, pf.factor_dims) {
        (Some(d1), Some(d2), _) => (d1, d2),
        (None, None, Some(dims)) => dims,
        _ => {
            return Err(anyhow!(
                "factor dimensions required: pass --d1 and --d2 or set factor_dims in the file"
            ))
        }
    };
    let observables = pf.build_observables()?;
    let a = pf.find_observable(&observables, &args.a)?;

    let schmidt = schmidt_decompose(&state, d1, d2)?;
    let (direct, complement) = kmax_squared_forms(&schmidt, &a)?;
    let residue = projector_residue(&schmidt, &a)?;
    let partner = optimal_partner_observable(&schmidt, &a, 1.0)?;

    println!("schmidt rank {} over {}x{}", schmidt.rank(), d1, d2);
    let coeffs: Vec<String> = schmidt.coefficients.iter().map(|c| format!("{c:.12}")).collect();
    println!("coefficients: [{}]", coeffs.join(", "));
    println!("k_max^2 (weighted-sum form)  = {direct:.12}");
    println!("k_max^2 (complementary form) = {complement:.12}");
    println!("projector residue            = {residue:.3e}");
    println!("optimal partner (factor 2, rows):");
    let m = partner.matrix();
    for i in 0..m.nrows() {
        let row: Vec<String> =
            (0..m.ncols()).map(|j| format!("{:+.6}{:+.6}i", m[(i, j)].re, m[(i, j)].im)).collect();
        println!("  [{}]", row.join(", "));
    }

    let mut sink = RecordSink::new(args.format, args.output.as_ref())?;
    sink.emit_value(&json!({
        "d1": d1,
        "d2": d2,
        "schmidt_coefficients": schmidt.coefficients,
        "k_max_squared": complement,
        "k_max_squared_forms": [direct, complement],
        "projector_residue": residue,
        "optimal_partner": matrix_to_rows(partner.matrix()),
    }))?;
    Ok(0)
}
