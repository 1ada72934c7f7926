//! Problem-file schema: JSON with complex numbers encoded as `[re, im]`
//! pairs and matrices row-major.

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use urlab_core::continuum::GridWavefunction;
use urlab_core::linalg::{CMatrix, CVector};
use urlab_core::qcore::{make_observable, Observable, QuantumState};

pub type Cpx = [f64; 2];

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    /// Pure state vector.
    Pure(Vec<Cpx>),
    /// Density matrix, row-major.
    Mixed(Vec<Vec<Cpx>>),
    /// 1D grid wavefunction.
    Grid { samples: Vec<Cpx>, dx: f64, x0: f64, #[serde(default = "default_hbar")] hbar: f64 },
}

fn default_hbar() -> f64 {
    1.0
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ObservableSpec {
    pub label: String,
    pub matrix: Vec<Vec<Cpx>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_compat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_triples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProblemFile {
    pub state: StateSpec,
    #[serde(default)]
    pub observables: Vec<ObservableSpec>,
    /// `(d1, d2)` factorization for bipartite analysis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_dims: Option<(usize, usize)>,
    #[serde(default)]
    pub options: ProblemOptions,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!("problem file parse error at line {}, column {}: {e}", e.line(), e.column())
    })
}

pub fn to_json(problem: &ProblemFile) -> String {
    serde_json::to_string_pretty(problem).expect("problem files always serialize")
}

fn to_complex(c: Cpx) -> Complex64 {
    Complex64::new(c[0], c[1])
}

fn from_complex(z: Complex64) -> Cpx {
    [z.re, z.im]
}

pub fn matrix_from_rows(rows: &[Vec<Cpx>], label: &str) -> Result<CMatrix> {
    let n = rows.len();
    if n == 0 {
        bail!("matrix '{label}' is empty");
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!("matrix '{label}' is not square: row {i} has {} entries, expected {n}", row.len());
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| to_complex(rows[i][j])))
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Cpx>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| from_complex(m[(i, j)])).collect())
        .collect()
}

impl ProblemFile {
    /// Builds the validated state; grid states are rejected here since the
    /// matrix checkers cannot consume them.
    pub fn build_matrix_state(&self) -> Result<QuantumState> {
        match &self.state {
            StateSpec::Pure(v) => {
                let vec = CVector::from_fn(v.len(), |i, _| to_complex(v[i]));
                QuantumState::pure(vec).map_err(|e| anyhow!("state: {e}"))
            }
            StateSpec::Mixed(rows) => {
                let m = matrix_from_rows(rows, "rho")?;
                QuantumState::mixed(m).map_err(|e| anyhow!("state: {e}"))
            }
            StateSpec::Grid { .. } => bail!(
                "this command needs a matrix-model state (pure vector or density matrix); \
                 grid wavefunctions are handled by the demo subcommand"
            ),
        }
    }

    pub fn build_grid_state(&self) -> Result<GridWavefunction> {
        match &self.state {
            StateSpec::Grid { samples, dx, x0, hbar } => {
                let s: Vec<Complex64> = samples.iter().map(|c| to_complex(*c)).collect();
                GridWavefunction::new(s, *dx, *x0, *hbar).map_err(|e| anyhow!("grid state: {e}"))
            }
            _ => bail!("this command needs a grid wavefunction state"),
        }
    }

    pub fn build_observables(&self) -> Result<Vec<(String, Observable)>> {
        self.observables
            .iter()
            .map(|spec| {
                let m = matrix_from_rows(&spec.matrix, &spec.label)?;
                let o = make_observable(m, spec.label.clone())
                    .with_context(|| format!("observable '{}'", spec.label))?;
                Ok((spec.label.clone(), o))
            })
            .collect()
    }

    pub fn find_observable(&self, built: &[(String, Observable)], label: &str) -> Result<Observable> {
        built
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, o)| o.clone())
            .ok_or_else(|| anyhow!("no observable labeled '{label}' in the problem file"))
    }
}

/// Encodes a grid wavefunction back into the file schema.
pub fn grid_to_spec(wf: &GridWavefunction) -> StateSpec {
    StateSpec::Grid {
        samples: wf.samples().iter().map(|z| from_complex(*z)).collect(),
        dx: wf.dx(),
        x0: wf.x0(),
        hbar: wf.hbar(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit_problem() -> ProblemFile {
        ProblemFile {
            state: StateSpec::Pure(vec![[1.0, 0.0], [0.0, 0.0]]),
            observables: vec![
                ObservableSpec {
                    label: "sx".into(),
                    matrix: vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[1.0, 0.0], [0.0, 0.0]]],
                },
                ObservableSpec {
                    label: "sy".into(),
                    matrix: vec![vec![[0.0, 0.0], [0.0, -1.0]], vec![[0.0, 1.0], [0.0, 0.0]]],
                },
            ],
            factor_dims: None,
            options: ProblemOptions::default(),
        }
    }

    #[test]
    fn roundtrip_is_bit_identical() {
        let p = qubit_problem();
        let text = to_json(&p);
        let back = parse_problem(&text).unwrap();
        assert_eq!(p, back);
        // doubles survive the text round-trip exactly
        let text2 = to_json(&back);
        assert_eq!(text, text2);
    }

    #[test]
    fn roundtrip_awkward_floats() {
        let mut p = qubit_problem();
        p.state = StateSpec::Pure(vec![[0.1 + 0.2, -1e-17], [std::f64::consts::PI, 2.2250738585072014e-308]]);
        let back = parse_problem(&to_json(&p)).unwrap();
        match (&p.state, &back.state) {
            (StateSpec::Pure(a), StateSpec::Pure(b)) => {
                for (x, y) in a.iter().zip(b) {
                    assert_eq!(x[0].to_bits(), y[0].to_bits());
                    assert_eq!(x[1].to_bits(), y[1].to_bits());
                }
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn parse_error_carries_location() {
        let err = parse_problem("{\"state\": {\"pure\": [[1.0,]]}}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn non_square_matrix_names_label() {
        let mut p = qubit_problem();
        p.observables[1].matrix = vec![vec![[0.0, 0.0]]; 3];
        let err = p.build_observables().unwrap_err();
        assert!(err.to_string().contains("sy"), "{err}");
    }
}
