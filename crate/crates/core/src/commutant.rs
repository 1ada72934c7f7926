//! Search for the observable, effectively compatible with `B`, that
//! maximizes the squared correlation coefficient with `A` — tightening the
//! lower bound of the `(A, B)` uncertainty product ratio.
//!
//! Hermitian candidates are parameterized by `d^2` real coordinates
//! (diagonal entries, then (re, im) per upper-triangle entry, row-major).
//! The squared CC is a rank-one generalized Rayleigh quotient
//! `(g.c)^2 / (dA^2 * c'Mc)` with one linear constraint `l.c = 0`, solved by
//! pseudo-inverting the variance form on the constraint hyperplane with a
//! spectral cutoff that removes zero-deviation directions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::linalg::{apply_factor1, hermitian_eigen, CMatrix, CVector};
use crate::measures::{upr, UprValue};
use crate::qcore::{
    commutator_expect, expectation, make_observable, purify,
    rms_deviation, Observable, QuantumState,
};
use crate::tol;

/// Options for the commutant search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest state dimension accepted (the candidate space grows as `d^2`).
    pub dim_cap: usize,
    /// Relative spectral cutoff for the variance-form pseudo-inverse.
    pub spectral_cut: f64,
    /// Restrict candidates to the operator commutant of `B` (everything that
    /// commutes with `B` as a matrix) instead of the effective commutant.
    pub strict: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { dim_cap: 16, spectral_cut: tol::SPECTRAL_CUT, strict: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    ClosedForm,
    RandomOracle,
}

/// Result of a commutant search. The partner observable is reported in the
/// canonical gauge `<C> = 0`, `dC = 1` whenever its deviation is nonzero.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub partner: Observable,
    pub k_squared: f64,
    /// `|<[A,B]>| / sqrt(1 - k_squared)`, the tightened lower bound for
    /// `2 dA dB`; zero when the commutator expectation vanishes.
    pub tightened_rhs: f64,
    /// `|<[B, C]>|` for the returned partner.
    pub compat_residual: f64,
    pub method: SearchMethod,
    /// Candidate-space dimension for the closed form; sample count for the
    /// random oracle.
    pub samples: usize,
    pub note: Option<String>,
}

/// Canonical real coordinates for Hermitian matrices: `d` diagonal entries,
/// then (re, im) pairs for each upper-triangle entry in row-major order.
pub fn hermitian_basis_len(d: usize) -> usize {
    d * d
}

/// Materializes the `k`-th canonical basis matrix.
pub fn hermitian_basis_matrix(d: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    if k < d {
        m[(k, k)] = Complex64::ONE;
        return m;
    }
    let mut idx = d;
    for i in 0..d {
        for j in (i + 1)..d {
            if k == idx {
                m[(i, j)] = Complex64::ONE;
                m[(j, i)] = Complex64::ONE;
                return m;
            }
            if k == idx + 1 {
                m[(i, j)] = Complex64::I;
                m[(j, i)] = -Complex64::I;
                return m;
            }
            idx += 2;
        }
    }
    panic!("basis index {k} out of range for dimension {d}");
}

/// Assembles a Hermitian matrix from canonical coordinates.
pub fn coords_to_matrix(d: usize, coords: &[f64]) -> CMatrix {
    debug_assert_eq!(coords.len(), d * d);
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex64::new(coords[i], 0.0);
    }
    let mut idx = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let z = Complex64::new(coords[idx], coords[idx + 1]);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            idx += 2;
        }
    }
    m
}

/// Hermitian basis of the operator commutant of `b`: block Hermitians on
/// each eigenspace, eigenvalues grouped within a relative degeneracy
/// tolerance.
pub fn commutant_algebra_basis(b: &Observable, degeneracy_tol: f64) -> Vec<CMatrix> {
    let d = b.dim();
    let (vals, vecs) = hermitian_eigen(b.matrix());
    let scale = vals.iter().fold(1f64, |acc, v| acc.max(v.abs()));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..d {
        match groups.last_mut() {
            Some(g) if (vals[i] - vals[g[0]]).abs() <= degeneracy_tol * scale => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut basis = Vec::new();
    let outer = |u: &CVector, v: &CVector| -> CMatrix {
        CMatrix::from_fn(d, d, |r, c| u[r] * v[c].conj())
    };
    for g in &groups {
        for (p, &i) in g.iter().enumerate() {
            let ui = vecs.column(i).clone_owned();
            basis.push(outer(&ui, &ui));
            for &j in &g[(p + 1)..] {
                let uj = vecs.column(j).clone_owned();
                let re = outer(&ui, &uj) + outer(&uj, &ui);
                let im = outer(&ui, &uj).map(|z| z * Complex64::I)
                    + outer(&uj, &ui).map(|z| z * (-Complex64::I));
                basis.push(re);
                basis.push(im);
            }
        }
    }
    basis
}

/// The state reduced to a pure vector plus an action that applies a
/// candidate (living on the original `d`-dimensional space) to it. Mixed
/// states route through purification, acting on the first factor.
struct PureView {
    psi: CVector,
    d: usize,
    factor2: usize,
}

impl PureView {
    fn new(state: &QuantumState) -> Result<Self> {
        let d = state.dim();
        if let Some(v) = state.vector() {
            Ok(PureView { psi: v.clone(), d, factor2: 1 })
        } else {
            let pure = purify(state)?;
            let psi = pure.vector().expect("purification is pure").clone();
            Ok(PureView { psi, d, factor2: d })
        }
    }

    fn apply(&self, h: &CMatrix) -> CVector {
        if self.factor2 == 1 {
            h * &self.psi
        } else {
            apply_factor1(h, &self.psi, self.d, self.factor2)
        }
    }
}

struct RayleighSolution {
    k_squared: f64,
    coords: Vec<f64>,
    degenerate: bool,
}

/// Maximizes `(g.c)^2 / (var_a * c'Mc)` over the span of `basis`, subject to
/// the optional effective-compatibility constraint with `constraint_op`.
fn solve_rayleigh(
    view: &PureView,
    basis: &[CMatrix],
    a_matrix: &CMatrix,
    var_a: f64,
    constraint_op: Option<&CMatrix>,
    spectral_cut: f64,
) -> RayleighSolution {
    let n = basis.len();
    let psi = &view.psi;
    let mut w: Vec<CVector> = basis.iter().map(|h| view.apply(h)).collect();
    let mean_a = psi.dotc(&view.apply(a_matrix)).re;
    let mut wa = view.apply(a_matrix);
    wa -= psi.map(|z| z * Complex64::new(mean_a, 0.0));

    // One real linear constraint: Im<[B, C]> = 0 (means drop out exactly).
    let ell: Option<Vec<f64>> = constraint_op.map(|b| {
        let wb = view.apply(b);
        w.iter().map(|wk| 2.0 * wb.dotc(wk).im).collect()
    });

    // center the applied vectors so the variance Gram matrix is free of
    // mean-squared cancellation
    for wk in &mut w {
        let m = psi.dotc(wk).re;
        *wk -= psi.map(|z| z * Complex64::new(m, 0.0));
    }
    let g: Vec<f64> = w.iter().map(|wk| wa.dotc(wk).re).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        for l in k..n {
            let v = w[k].dotc(&w[l]).re;
            m[(k, l)] = v;
            m[(l, k)] = v;
        }
    }

    // Orthonormal basis of the constraint hyperplane via one Householder
    // reflection; identity when the constraint is trivial.
    let z = match &ell {
        Some(l) => {
            let norm = l.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm <= 1e-12 {
                DMatrix::<f64>::identity(n, n)
            } else {
                let mut v: Vec<f64> = l.iter().map(|x| x / norm).collect();
                v[0] += if v[0] >= 0.0 { 1.0 } else { -1.0 };
                let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                for x in &mut v {
                    *x /= vn;
                }
                let mut h = DMatrix::<f64>::identity(n, n);
                for r in 0..n {
                    for c in 0..n {
                        h[(r, c)] -= 2.0 * v[r] * v[c];
                    }
                }
                h.columns(1, n - 1).into_owned()
            }
        }
        None => DMatrix::<f64>::identity(n, n),
    };

    let mt = z.transpose() * &m * &z;
    let gt = z.transpose() * DMatrix::from_column_slice(n, 1, &g);
    let se = mt.symmetric_eigen();
    let lam_max = se.eigenvalues.iter().fold(0f64, |acc, &v| acc.max(v));
    let cut = spectral_cut * lam_max;
    let dim = se.eigenvalues.len();
    let mut y = vec![0.0; dim];
    let mut k2 = 0.0;
    for i in 0..dim {
        if se.eigenvalues[i] > cut {
            let ui = se.eigenvectors.column(i);
            let proj: f64 = (0..dim).map(|r| ui[r] * gt[(r, 0)]).sum();
            k2 += proj * proj / se.eigenvalues[i];
            for r in 0..dim {
                y[r] += proj / se.eigenvalues[i] * ui[r];
            }
        }
    }
    k2 /= var_a;
    let degenerate = k2 <= 0.0;
    let coords: Vec<f64> = if degenerate {
        // covariance vanishes across the admissible space; return the
        // largest-variance admissible direction as the canonical partner
        let mut best = (f64::MIN, 0);
        for i in 0..dim {
            if se.eigenvalues[i] > best.0 {
                best = (se.eigenvalues[i], i);
            }
        }
        let ui = se.eigenvectors.column(best.1);
        (0..n).map(|r| (0..dim).map(|c| z[(r, c)] * ui[c]).sum()).collect()
    } else {
        (0..n).map(|r| (0..dim).map(|c| z[(r, c)] * y[c]).sum()).collect()
    };
    RayleighSolution { k_squared: k2.clamp(0.0, 1.0), coords, degenerate }
}

fn canonical_partner(
    state: &QuantumState,
    matrix: CMatrix,
    label: String,
) -> Result<Observable> {
    let raw = make_observable(matrix, label.clone())?;
    let mean = expectation(state, &raw)?;
    let dev = rms_deviation(state, &raw)?;
    let d = raw.dim();
    let mut m = raw.matrix().clone();
    for i in 0..d {
        m[(i, i)] -= Complex64::new(mean, 0.0);
    }
    if dev > tol::ZERO_DEV {
        m = m.map(|z| z / dev);
    }
    make_observable(m, label)
}

fn tightened_rhs_for(comm_abs: f64, k_squared: f64) -> f64 {
    if comm_abs <= tol::NORMALIZATION {
        0.0
    } else {
        comm_abs / (1.0 - k_squared).max(0.0).sqrt()
    }
}

/// Finds the observable `C`, effectively compatible with `b` in the state,
/// that maximizes `K(a, C)^2`, by the closed-form constrained Rayleigh
/// maximization.
pub fn maximize_cc_in_commutant(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let d = state.dim();
    if a.dim() != d {
        return Err(CoreError::DimMismatch { expected: d, got: a.dim() });
    }
    if b.dim() != d {
        return Err(CoreError::DimMismatch { expected: d, got: b.dim() });
    }
    if d > options.dim_cap {
        return Err(CoreError::DimTooLarge { dim: d, cap: options.dim_cap });
    }
    let var_a = crate::qcore::variance(state, a)?;
    if var_a.sqrt() <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: a.label().to_string() });
    }

    let view = PureView::new(state)?;
    let (basis, constraint): (Vec<CMatrix>, Option<&CMatrix>) = if options.strict {
        (commutant_algebra_basis(b, 1e-8), None)
    } else {
        let basis: Vec<CMatrix> =
            (0..hermitian_basis_len(d)).map(|k| hermitian_basis_matrix(d, k)).collect();
        (basis, Some(b.matrix()))
    };
    let sol = solve_rayleigh(&view, &basis, a.matrix(), var_a, constraint, options.spectral_cut);

    let mut matrix = CMatrix::zeros(d, d);
    for (c, h) in sol.coords.iter().zip(&basis) {
        if *c != 0.0 {
            matrix += h.map(|z| z * Complex64::new(*c, 0.0));
        }
    }
    let partner = canonical_partner(state, matrix, format!("argmax_cc({},{})", a.label(), b.label()))?;
    let compat_residual = commutator_expect(state, b, &partner)?.norm();
    let comm_abs = commutator_expect(state, a, b)?.norm();
    Ok(SearchResult {
        partner,
        k_squared: sol.k_squared,
        tightened_rhs: tightened_rhs_for(comm_abs, sol.k_squared),
        compat_residual,
        method: SearchMethod::ClosedForm,
        samples: basis.len(),
        note: sol.degenerate.then(|| {
            "degenerate problem: covariance with A vanishes across the admissible directions".to_string()
        }),
    })
}

/// Random-sampling oracle for the commutant maximization: draws Hermitian
/// candidates, projects their coordinates onto the constraint hyperplane,
/// and evaluates the squared CC from the moment definitions. Deterministic
/// for a fixed seed. Samples whose variance falls below a conditioning
/// floor (1e-8 of the squared coordinate norm) are skipped: a tiny-variance
/// direction cannot truly improve the ratio, and the float quotient of two
/// near-zero moments is meaningless.
pub fn brute_force_cc_max(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    samples: usize,
    seed: u64,
) -> Result<SearchResult> {
    if samples == 0 {
        return Err(CoreError::InvalidParameter { what: "samples must be >= 1".into() });
    }
    let d = state.dim();
    if a.dim() != d {
        return Err(CoreError::DimMismatch { expected: d, got: a.dim() });
    }
    if b.dim() != d {
        return Err(CoreError::DimMismatch { expected: d, got: b.dim() });
    }
    let var_a = crate::qcore::variance(state, a)?;
    if var_a.sqrt() <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: a.label().to_string() });
    }

    let n = hermitian_basis_len(d);
    let mut ell = vec![0.0; n];
    for (k, l) in ell.iter_mut().enumerate() {
        let h = hermitian_basis_matrix(d, k);
        let hobs = make_observable(h, format!("h{k}"))?;
        *l = commutator_expect(state, b, &hobs)?.im;
    }
    let ell_norm2: f64 = ell.iter().map(|x| x * x).sum();

    let view = PureView::new(state)?;
    let psi = &view.psi;
    let mean_a = psi.dotc(&view.apply(a.matrix())).re;
    let mut wa = view.apply(a.matrix());
    wa -= psi.map(|z| z * Complex64::new(mean_a, 0.0));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let mut best_k2 = 0.0;
    let mut best_coords: Option<Vec<f64>> = None;
    for _ in 0..samples {
        let mut c: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
        if ell_norm2 > 1e-20 {
            let t: f64 = c.iter().zip(&ell).map(|(x, l)| x * l).sum::<f64>() / ell_norm2;
            for (x, l) in c.iter_mut().zip(&ell) {
                *x -= t * l;
            }
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-12 {
            continue;
        }
        for x in &mut c {
            *x /= norm;
        }
        let cm = coords_to_matrix(d, &c);
        let mut wc = view.apply(&cm);
        let mean_c = psi.dotc(&wc).re;
        wc -= psi.map(|z| z * Complex64::new(mean_c, 0.0));
        let var_c = wc.norm_squared();
        if var_c < 1e-8 {
            continue;
        }
        let cov = wa.dotc(&wc).re;
        let k2 = cov * cov / (var_a * var_c);
        if k2 > best_k2 {
            best_k2 = k2;
            best_coords = Some(c);
        }
    }
    let comm_abs = commutator_expect(state, a, b)?.norm();
    let (partner, compat_residual, note) = match best_coords {
        Some(c) => {
            let partner = canonical_partner(
                state,
                coords_to_matrix(d, &c),
                format!("oracle_cc({},{})", a.label(), b.label()),
            )?;
            let resid = commutator_expect(state, b, &partner)?.norm();
            (partner, resid, None)
        }
        None => (
            Observable::identity(d, "oracle_cc(degenerate)"),
            0.0,
            Some("no admissible sample cleared the variance floor".to_string()),
        ),
    };
    Ok(SearchResult {
        partner,
        k_squared: best_k2.min(1.0),
        tightened_rhs: tightened_rhs_for(comm_abs, best_k2.min(1.0)),
        compat_residual,
        method: SearchMethod::RandomOracle,
        samples,
        note,
    })
}

/// Both directions of the generalized bound for a pair: the best partner in
/// the effective commutant of `b` (correlating with `a`) and of `a`
/// (correlating with `b`), with the actual UPR for comparison.
#[derive(Clone, Debug)]
pub struct TightenedBound {
    pub upr: UprValue,
    pub via_b_commutant: SearchResult,
    pub via_a_commutant: SearchResult,
}

impl TightenedBound {
    /// Lower bound for the UPR from the `B`-commutant search,
    /// `[1 - K(A,C)^2]^{-1/2}`.
    pub fn lower_bound_via_b(&self) -> f64 {
        1.0 / (1.0 - self.via_b_commutant.k_squared).max(0.0).sqrt()
    }

    /// Lower bound for the UPR from the `A`-commutant search.
    pub fn lower_bound_via_a(&self) -> f64 {
        1.0 / (1.0 - self.via_a_commutant.k_squared).max(0.0).sqrt()
    }
}

/// Runs the commutant maximization in both directions.
pub fn tightened_bound(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    options: &SearchOptions,
) -> Result<TightenedBound> {
    let via_b = maximize_cc_in_commutant(state, a, b, options)?;
    let via_a = maximize_cc_in_commutant(state, b, a, options)?;
    Ok(TightenedBound { upr: upr(state, a, b)?, via_b_commutant: via_b, via_a_commutant: via_a })
}

/// Maximizes `K(A (x) I, I (x) C)^2` over Hermitian `C` on the second factor
/// of a bipartite pure state; consistency oracle for the bipartite closed
/// forms. No constraint is needed: a second-factor observable commutes with
/// every first-factor one.
pub fn maximize_cc_second_factor(
    state: &QuantumState,
    a: &Observable,
    d1: usize,
    d2: usize,
) -> Result<f64> {
    if state.dim() != d1 * d2 {
        return Err(CoreError::DimFactorMismatch { dim: state.dim(), d1, d2 });
    }
    if a.dim() != d1 {
        return Err(CoreError::DimMismatch { expected: d1, got: a.dim() });
    }
    let psi = state.vector().ok_or(CoreError::NotPure { op: "maximize_cc_second_factor" })?;
    let view = PureView { psi: psi.clone(), d: d1 * d2, factor2: 1 };
    let basis: Vec<CMatrix> = (0..hermitian_basis_len(d2))
        .map(|k| {
            let h = hermitian_basis_matrix(d2, k);
            let mut full = CMatrix::zeros(d1 * d2, d1 * d2);
            // I (x) H
            for i in 0..d1 {
                for r in 0..d2 {
                    for c in 0..d2 {
                        full[(i * d2 + r, i * d2 + c)] = h[(r, c)];
                    }
                }
            }
            full
        })
        .collect();
    let a_full = crate::qcore::embed_factor1(a, d2);
    let var_a = crate::qcore::variance(state, &a_full)?;
    if var_a.sqrt() <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: a.label().to_string() });
    }
    let sol = solve_rayleigh(&view, &basis, a_full.matrix(), var_a, None, tol::SPECTRAL_CUT);
    Ok(sol.k_squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::pauli::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_roundtrip() {
        let d = 3;
        let coords: Vec<f64> = (0..hermitian_basis_len(d)).map(|k| 0.1 * k as f64 - 0.3).collect();
        let m = coords_to_matrix(d, &coords);
        // rebuild from basis matrices
        let mut m2 = CMatrix::zeros(d, d);
        for (k, c) in coords.iter().enumerate() {
            m2 += hermitian_basis_matrix(d, k).map(|z| z * Complex64::new(*c, 0.0));
        }
        assert!(crate::linalg::max_norm(&(m - m2)) < 1e-15);
    }

    #[test]
    fn saturated_qubit_admits_no_correlation() {
        let r = maximize_cc_in_commutant(&ket0(), &sx(), &sy(), &SearchOptions::default()).unwrap();
        assert!(r.k_squared <= 1e-12, "k^2 = {}", r.k_squared);
        assert!(r.compat_residual <= 1e-9);
        assert_abs_diff_eq!(r.tightened_rhs, 2.0, epsilon = 1e-9);
        let swapped =
            maximize_cc_in_commutant(&ket0(), &sy(), &sx(), &SearchOptions::default()).unwrap();
        assert!(swapped.k_squared <= 1e-12);
    }

    #[test]
    fn b_equal_a_gives_full_correlation() {
        let r = maximize_cc_in_commutant(&ket0(), &sx(), &sx(), &SearchOptions::default()).unwrap();
        assert_abs_diff_eq!(r.k_squared, 1.0, epsilon = 1e-10);
        // <[A,A]> = 0, so the tightened rhs degenerates to zero
        assert_abs_diff_eq!(r.tightened_rhs, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_deviation_rejected() {
        let r = maximize_cc_in_commutant(&ket0(), &sz(), &sx(), &SearchOptions::default());
        assert!(matches!(r, Err(CoreError::ZeroDeviation { .. })));
    }

    #[test]
    fn oracle_is_deterministic() {
        let r1 = brute_force_cc_max(&ket0(), &sx(), &sy(), 1, 42).unwrap();
        let r2 = brute_force_cc_max(&ket0(), &sx(), &sy(), 1, 42).unwrap();
        assert_eq!(r1.k_squared, r2.k_squared);
        assert_eq!(r1.partner.matrix(), r2.partner.matrix());
    }

    #[test]
    fn oracle_approaches_zero_on_saturated_case() {
        let r = brute_force_cc_max(&ket0(), &sx(), &sy(), 100_000, 7).unwrap();
        assert!(r.k_squared <= 1e-3, "k^2 = {}", r.k_squared);
    }

    #[test]
    fn tightened_bound_saturated_case() {
        let t = tightened_bound(&ket0(), &sx(), &sy(), &SearchOptions::default()).unwrap();
        assert_eq!(t.upr, UprValue::Value(1.0));
        assert_abs_diff_eq!(t.lower_bound_via_b(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(t.lower_bound_via_a(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn tightened_bound_unconstrained_pair() {
        // <[A,B]> = 0 for B = A, so the UPR is unconstrained and the rhs zero
        let t = tightened_bound(&ket0(), &sx(), &sx(), &SearchOptions::default()).unwrap();
        assert_eq!(t.upr, UprValue::Unconstrained);
        assert_abs_diff_eq!(t.via_b_commutant.tightened_rhs, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.via_a_commutant.tightened_rhs, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn strict_commutant_never_beats_effective() {
        use crate::random::{random_observable, random_pure_state, seeded_rng};
        let mut rng = seeded_rng(31);
        for _ in 0..20 {
            let s = random_pure_state(&mut rng, 3);
            let a = random_observable(&mut rng, 3, "a");
            let b = random_observable(&mut rng, 3, "b");
            let eff = maximize_cc_in_commutant(&s, &a, &b, &SearchOptions::default()).unwrap();
            let strict = maximize_cc_in_commutant(
                &s,
                &a,
                &b,
                &SearchOptions { strict: true, ..Default::default() },
            )
            .unwrap();
            assert!(
                strict.k_squared <= eff.k_squared + 1e-9,
                "strict {} > effective {}",
                strict.k_squared,
                eff.k_squared
            );
        }
    }

    #[test]
    fn partner_reported_in_canonical_gauge() {
        use crate::random::{random_observable, random_pure_state, seeded_rng};
        let mut rng = seeded_rng(23);
        for dim in 2..6 {
            let s = random_pure_state(&mut rng, dim);
            let a = random_observable(&mut rng, dim, "a");
            let b = random_observable(&mut rng, dim, "b");
            let r = maximize_cc_in_commutant(&s, &a, &b, &SearchOptions::default()).unwrap();
            assert!(expectation(&s, &r.partner).unwrap().abs() < 1e-10);
            assert!((rms_deviation(&s, &r.partner).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        use crate::random::{random_observable, random_pure_state, seeded_rng};
        let mut rng = seeded_rng(29);
        let s = random_pure_state(&mut rng, 4);
        let a = random_observable(&mut rng, 4, "a");
        let b = random_observable(&mut rng, 4, "b");
        let opts = SearchOptions { dim_cap: 3, ..Default::default() };
        assert!(matches!(
            maximize_cc_in_commutant(&s, &a, &b, &opts),
            Err(CoreError::DimTooLarge { dim: 4, cap: 3 })
        ));
    }

    #[test]
    fn commutant_algebra_basis_commutes() {
        use crate::random::{random_observable, seeded_rng};
        let mut rng = seeded_rng(5);
        let b = random_observable(&mut rng, 4, "b");
        let basis = commutant_algebra_basis(&b, 1e-8);
        assert_eq!(basis.len(), 4); // nondegenerate spectrum: diagonal algebra
        for h in &basis {
            let comm = b.matrix() * h - h * b.matrix();
            assert!(crate::linalg::max_norm(&comm) < 1e-8);
        }
    }
}
