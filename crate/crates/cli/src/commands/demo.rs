use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use num_complex::Complex64;
use serde_json::json;
use urlab_core::bipartite::{kmax_squared_forms, optimal_partner_observable, schmidt_decompose};
use urlab_core::continuum::{
    gaussian_pair_closed_forms, verify_gaussian_saturation, GridWavefunction, GridWavefunction2D,
};
use urlab_core::linalg::CVector;
use urlab_core::qcore::{make_observable, QuantumState};
use urlab_core::tol::Tolerances;

use crate::problem::matrix_to_rows;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoExample {
    /// Chirped-Gaussian estimator correlation and its UPR bound.
    HeisenbergChirp,
    /// Two-quanton Gaussian: squared UPR vs [1-K^2]^{-1}, plus the
    /// unit-circle / confining-ellipse figure data.
    GaussianPair,
    /// Schmidt closed forms on the Bell and (sqrt3/2, 1/2) states.
    Bipartite,
}

/// Reproduce a worked example end to end and write plot-ready data files.
#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(value_enum)]
    pub example: DemoExample,
    /// Directory for the emitted data files.
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// For heisenberg-chirp: analyze an imported grid-state problem file
    /// instead of the built-in chirp family.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

fn write_file(dir: &PathBuf, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn analyze_imported_state(path: &PathBuf) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let pf = crate::problem::parse_problem(&text)?;
    let wf = pf.build_grid_state()?;
    let (mx, dx_rms) = wf.position_moments();
    let (mp, dp) = wf.momentum_moments();
    let k2 = wf.optimal_estimator_cc_squared();
    let bound = wf.check_estimator_bound(&Tolerances { slack: 1e-6, ..Default::default() });
    println!("imported grid state: {} samples, dx = {}", wf.len(), wf.dx());
    println!("<x> = {mx:.6}, dx = {dx_rms:.6}, <p> = {mp:.6}, dp = {dp:.6}");
    println!("K^2(phi',p) max = {k2:.8}");
    println!(
        "estimator bound: lhs {:.8} >= rhs {:.8} (slack {:.3e}, {})",
        bound.lhs,
        bound.rhs,
        bound.slack,
        if bound.satisfied { "ok" } else { "VIOLATED" }
    );
    Ok(())
}

fn heisenberg_chirp(out: &PathBuf) -> Result<()> {
    let sigma = 1.0;
    let mut csv = String::from("c,k2_grid,k2_analytic,bound_lhs,bound_rhs,slack\n");
    let mut grid_points: Vec<f64> = (0..=40).map(|i| i as f64 * 0.05).collect();
    for &c in &[0.25, 1.0] {
        if !grid_points.contains(&c) {
            grid_points.push(c);
        }
    }
    grid_points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for c in grid_points {
        let wf = GridWavefunction::gaussian(256, sigma, 0.0, 0.0, c, 1.0)?;
        let k2 = wf.optimal_estimator_cc_squared();
        let analytic = 16.0 * c * c * sigma.powi(4) / (16.0 * c * c * sigma.powi(4) + 1.0);
        let bound = wf.check_estimator_bound(&Tolerances { slack: 1e-6, ..Default::default() });
        writeln!(csv, "{c},{k2},{analytic},{},{},{}", bound.lhs, bound.rhs, bound.slack).unwrap();
    }
    let path = write_file(out, "heisenberg_chirp.csv", &csv)?;
    println!("wrote {}", path.display());
    for c in [0.0f64, 0.25, 1.0] {
        let wf = GridWavefunction::gaussian(256, sigma, 0.0, 0.0, c, 1.0)?;
        let k2 = wf.optimal_estimator_cc_squared();
        let analytic = 16.0 * c * c * sigma.powi(4) / (16.0 * c * c * sigma.powi(4) + 1.0);
        println!("c = {c:<5}: K^2(phi',p) grid = {k2:.8}, analytic = {analytic:.8}");
    }
    // export the c = 1 state in the problem-file grid format for reuse
    let wf = GridWavefunction::gaussian(256, sigma, 0.0, 0.0, 1.0, 1.0)?;
    let state_file = crate::problem::ProblemFile {
        state: crate::problem::grid_to_spec(&wf),
        observables: Vec::new(),
        factor_dims: None,
        options: Default::default(),
    };
    let path = write_file(out, "chirp_state.json", &crate::problem::to_json(&state_file))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn ellipse_points(a: f64, b: f64, samples: usize) -> Vec<(f64, f64)> {
    // boundary of (1-a^2)x^2 - 2abxy + (1-b^2)y^2 = 1-a^2-b^2
    let (q00, q01, q11) = (1.0 - a * a, -a * b, 1.0 - b * b);
    let c = 1.0 - a * a - b * b;
    let tr = q00 + q11;
    let det = q00 * q11 - q01 * q01;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    let phi = 0.5 * (2.0 * q01).atan2(q00 - q11);
    let (s1, s2) = ((c / l1).max(0.0).sqrt(), (c / l2).max(0.0).sqrt());
    (0..samples)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            let (u, v) = (s1 * t.cos(), s2 * t.sin());
            (phi.cos() * u - phi.sin() * v, phi.sin() * u + phi.cos() * v)
        })
        .collect()
}

fn gaussian_pair(out: &PathBuf) -> Result<()> {
    let a = 1.0;
    let mut csv = String::from("a,b,upr2_analytic,inv_analytic,upr2_grid,inv_grid,k_x1_p1_grid\n");
    for b in [1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0] {
        let forms = gaussian_pair_closed_forms(a, b);
        let report = verify_gaussian_saturation(a, b, 128, 1.0)?;
        writeln!(
            csv,
            "{a},{b},{},{},{},{},{}",
            forms.upr_squared,
            forms.inv_one_minus_k2,
            report.lhs,
            report.rhs,
            report.witness["k_x1_p1_grid"]
        )
        .unwrap();
        if (b - 4.0).abs() < 1e-12 {
            println!(
                "a = 1, b = 4: squared UPR analytic {:.6}, [1-K^2]^-1 analytic {:.6}, grid {:.6} / {:.6}",
                forms.upr_squared, forms.inv_one_minus_k2, report.lhs, report.rhs
            );
        }
    }
    let path = write_file(out, "gaussian_pair.csv", &csv)?;
    println!("wrote {}", path.display());

    // unit circle, confining ellipse, and the achieved overlap point for the
    // saturating default case
    let wf = GridWavefunction2D::gaussian_pair_state(a, 4.0, 128, 1.0)?;
    let (g, _) = wf.overlap_geometry_x1_p1_x2();
    let mut fig = String::from("kind,x,y\n");
    for i in 0..256 {
        let t = 2.0 * std::f64::consts::PI * i as f64 / 256.0;
        writeln!(fig, "circle,{},{}", t.cos(), t.sin()).unwrap();
    }
    for (x, y) in ellipse_points(g.a, g.b, 256) {
        writeln!(fig, "ellipse,{x},{y}").unwrap();
    }
    writeln!(fig, "point,{},{}", g.x, g.y).unwrap();
    let path = write_file(out, "figure1.csv", &fig)?;
    println!("wrote {} (overlap point ({:.4}, {:.4}), (a,b) = ({:.4}, {:.4}))", path.display(), g.x, g.y, g.a, g.b);
    Ok(())
}

fn bipartite(out: &PathBuf) -> Result<()> {
    let sx = make_observable(
        urlab_core::CMatrix::from_row_slice(
            2,
            2,
            &[Complex64::ZERO, Complex64::ONE, Complex64::ONE, Complex64::ZERO],
        ),
        "sx",
    )?;
    let mut cases = Vec::new();
    for (name, a1, a2) in [
        ("bell", std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
        ("tilted", 3f64.sqrt() / 2.0, 0.5),
    ] {
        let mut v = CVector::zeros(4);
        v[0] = Complex64::new(a1, 0.0);
        v[3] = Complex64::new(a2, 0.0);
        let s = QuantumState::pure(v)?;
        let f = schmidt_decompose(&s, 2, 2)?;
        let (direct, complement) = kmax_squared_forms(&f, &sx)?;
        let partner = optimal_partner_observable(&f, &sx, 1.0)?;
        println!(
            "{name}: coefficients ({a1:.6}, {a2:.6}), k_max^2 = {complement:.12} (forms agree to {:.1e})",
            (direct - complement).abs()
        );
        cases.push(json!({
            "case": name,
            "coefficients": f.coefficients,
            "k_max_squared": complement,
            "k_max_squared_forms": [direct, complement],
            "optimal_partner": matrix_to_rows(partner.matrix()),
        }));
    }
    let path = write_file(out, "bipartite_demo.json", &serde_json::to_string_pretty(&cases)?)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn run(args: &DemoArgs) -> Result<i32> {
    match args.example {
        DemoExample::HeisenbergChirp => match &args.state {
            Some(path) => analyze_imported_state(path)?,
            None => heisenberg_chirp(&args.output)?,
        },
        DemoExample::GaussianPair => gaussian_pair(&args.output)?,
        DemoExample::Bipartite => bipartite(&args.output)?,
    }
    Ok(0)
}
