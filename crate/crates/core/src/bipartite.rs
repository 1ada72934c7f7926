//! Schmidt analysis of bipartite pure states and the closed-form maximum
//! squared correlation between a first-subsystem observable and any
//! second-subsystem observable.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::linalg::{CMatrix, CVector};
use crate::qcore::{make_observable, Observable, QuantumState};
use crate::tol;

/// Bi-orthogonal (Schmidt) decomposition of a bipartite pure state:
/// strictly positive coefficients in descending order, matching orthonormal
/// bases for both factors, and the complements of the factor-space
/// projectors onto the Schmidt supports.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub left_basis: Vec<CVector>,
    pub right_basis: Vec<CVector>,
    pub dims: (usize, usize),
    /// `Pi_1 = I_1 - sum_m |phi_m><phi_m|`.
    pub proj1_complement: CMatrix,
    /// `Pi_2 = I_2 - sum_m |chi_m><chi_m|`.
    pub proj2_complement: CMatrix,
}

impl SchmidtForm {
    /// Number of retained Schmidt modes.
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// Reconstructs the state vector `sum_n a_n |phi_n>|chi_n>`.
    pub fn reconstruct(&self) -> CVector {
        let (d1, d2) = self.dims;
        let mut psi = CVector::zeros(d1 * d2);
        for (n, &a) in self.coefficients.iter().enumerate() {
            for i in 0..d1 {
                for j in 0..d2 {
                    psi[i * d2 + j] +=
                        Complex64::new(a, 0.0) * self.left_basis[n][i] * self.right_basis[n][j];
                }
            }
        }
        psi
    }

    /// Matrix elements of a first-factor observable in the left Schmidt
    /// basis, `A_mn = <phi_m|A|phi_n>`.
    fn elements(&self, a: &Observable) -> Result<CMatrix> {
        if a.dim() != self.dims.0 {
            return Err(CoreError::DimMismatch { expected: self.dims.0, got: a.dim() });
        }
        let r = self.rank();
        let mut out = CMatrix::zeros(r, r);
        for m in 0..r {
            let aphi_m = a.matrix() * &self.left_basis[m];
            for n in 0..r {
                out[(m, n)] = self.left_basis[n].dotc(&aphi_m).conj();
            }
        }
        Ok(out)
    }

    /// Mean of a first-factor observable in the state, `sum_m a_m^2 A_mm`.
    fn mean(&self, elements: &CMatrix) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(m, &a)| a * a * elements[(m, m)].re)
            .sum()
    }
}

/// Schmidt-decomposes a pure state on a `d1*d2`-dimensional space (first
/// factor major). Coefficients at or below [`tol::SCHMIDT_CUT`] are dropped.
pub fn schmidt_decompose(psi: &QuantumState, d1: usize, d2: usize) -> Result<SchmidtForm> {
    if psi.dim() != d1 * d2 {
        return Err(CoreError::DimFactorMismatch { dim: psi.dim(), d1, d2 });
    }
    let v = psi.vector().ok_or(CoreError::NotPure { op: "schmidt_decompose" })?;
    let m = CMatrix::from_fn(d1, d2, |i, j| v[i * d2 + j]);
    let svd = m.svd(true, true);
    let u = svd.u.as_ref().expect("svd with u");
    let vt = svd.v_t.as_ref().expect("svd with v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].partial_cmp(&svd.singular_values[a]).unwrap());

    let mut coefficients = Vec::new();
    let mut left_basis = Vec::new();
    let mut right_basis = Vec::new();
    for &k in &order {
        let s = svd.singular_values[k];
        if s <= tol::SCHMIDT_CUT {
            continue;
        }
        coefficients.push(s);
        left_basis.push(u.column(k).clone_owned());
        // psi_ij = sum_k s_k U_ik (Vt)_kj, so the right vectors are the
        // rows of Vt as stored.
        right_basis.push(CVector::from_fn(d2, |j, _| vt[(k, j)]));
    }
    let mut p1 = CMatrix::identity(d1, d1);
    for phi in &left_basis {
        p1 -= CMatrix::from_fn(d1, d1, |i, j| phi[i] * phi[j].conj());
    }
    let mut p2 = CMatrix::identity(d2, d2);
    for chi in &right_basis {
        p2 -= CMatrix::from_fn(d2, d2, |i, j| chi[i] * chi[j].conj());
    }
    Ok(SchmidtForm {
        coefficients,
        left_basis,
        right_basis,
        dims: (d1, d2),
        proj1_complement: p1,
        proj2_complement: p2,
    })
}

/// Nonnegative leakage of a first-factor observable outside the Schmidt
/// support, `sum_m a_m^2 (A Pi_1 A)_mm`.
pub fn projector_residue(schmidt: &SchmidtForm, a: &Observable) -> Result<f64> {
    if a.dim() != schmidt.dims.0 {
        return Err(CoreError::DimMismatch { expected: schmidt.dims.0, got: a.dim() });
    }
    let mut acc = 0.0;
    for (m, &am) in schmidt.coefficients.iter().enumerate() {
        let w = a.matrix() * &schmidt.left_basis[m];
        let pw = &schmidt.proj1_complement * &w;
        acc += am * am * w.dotc(&pw).re;
    }
    Ok(acc.max(0.0))
}

/// The second-factor observable maximizing `K(A, C)^2`, in the right Schmidt
/// basis: deviation part `lambda * w_mn * (A*_mn - <A> delta_mn)` with
/// `w_mn = 2 a_m a_n / (a_m^2 + a_n^2)`, zero on the complement of the
/// Schmidt support, gauge-fixed to `<C> = 0`.
pub fn optimal_partner_observable(
    schmidt: &SchmidtForm,
    a: &Observable,
    lambda: f64,
) -> Result<Observable> {
    if lambda == 0.0 {
        return Err(CoreError::InvalidParameter { what: "lambda must be nonzero".into() });
    }
    let elements = schmidt.elements(a)?;
    let mean = schmidt.mean(&elements);
    let r = schmidt.rank();
    let d2 = schmidt.dims.1;
    let mut c = CMatrix::zeros(d2, d2);
    for m in 0..r {
        for n in 0..r {
            let am2 = schmidt.coefficients[m] * schmidt.coefficients[m];
            let an2 = schmidt.coefficients[n] * schmidt.coefficients[n];
            let w = 2.0 * schmidt.coefficients[m] * schmidt.coefficients[n] / (am2 + an2);
            let dev = elements[(m, n)].conj() * w
                - if m == n { Complex64::new(mean, 0.0) } else { Complex64::ZERO };
            let coeff = dev * lambda;
            if coeff != Complex64::ZERO {
                for i in 0..d2 {
                    for j in 0..d2 {
                        c[(i, j)] +=
                            coeff * schmidt.right_basis[m][i] * schmidt.right_basis[n][j].conj();
                    }
                }
            }
        }
    }
    make_observable(c, format!("optimal_partner({})", a.label()))
}

/// Maximum squared CC between a first-factor observable and any
/// second-factor observable, computed through both closed forms, which must
/// agree to 1e-10.
pub fn kmax_squared(schmidt: &SchmidtForm, a: &Observable) -> Result<f64> {
    let (direct, complement) = kmax_squared_forms(schmidt, a)?;
    let delta = (direct - complement).abs();
    if delta > 1e-10 {
        return Err(CoreError::Inconsistent { what: "bipartite closed forms disagree".into(), delta });
    }
    Ok(complement)
}

/// Both closed forms for the maximum squared CC: the direct weighted sum
/// and the complementary `1 - (gap sum + residue)/dA^2` form.
pub fn kmax_squared_forms(schmidt: &SchmidtForm, a: &Observable) -> Result<(f64, f64)> {
    let elements = schmidt.elements(a)?;
    let mean = schmidt.mean(&elements);
    let residue = projector_residue(schmidt, a)?;
    let r = schmidt.rank();
    let a2: Vec<f64> = schmidt.coefficients.iter().map(|&x| x * x).collect();

    let mut sum_weighted = 0.0;
    let mut sum_gap = 0.0;
    let mut sum_half = 0.0;
    for m in 0..r {
        for n in 0..r {
            let w = elements[(m, n)].norm_sqr();
            sum_weighted += 2.0 * a2[m] * a2[n] / (a2[m] + a2[n]) * w;
            sum_gap += (a2[m] - a2[n]).powi(2) / (2.0 * (a2[m] + a2[n])) * w;
            sum_half += 0.5 * (a2[m] + a2[n]) * w;
        }
    }
    let var_a = sum_half - mean * mean + residue;
    if var_a.sqrt() <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: a.label().to_string() });
    }
    let direct = (sum_weighted - mean * mean) / var_a;
    let complement = 1.0 - (sum_gap + residue) / var_a;
    Ok((direct.clamp(0.0, 1.0), complement.clamp(0.0, 1.0)))
}
