//! Dense complex linear algebra helpers shared by the other modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Max-norm of the anti-Hermitian part, i.e. `max_ij |M - M~|_ij` where `M~`
/// is the conjugate transpose.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Max elementwise modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// `(M + M~)/2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Eigendecomposition of a Hermitian matrix. Returns eigenvalues ascending
/// with matching unit eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Applies `H (x) I` to a vector on a `d1*d2`-dimensional product space,
/// with the first factor as the major index (`psi[i*d2 + j]`).
pub fn apply_factor1(h: &CMatrix, psi: &CVector, d1: usize, d2: usize) -> CVector {
    debug_assert_eq!(psi.len(), d1 * d2);
    debug_assert_eq!(h.nrows(), d1);
    let mut out = CVector::zeros(d1 * d2);
    for i in 0..d1 {
        for k in 0..d1 {
            let hik = h[(i, k)];
            if hik != Complex64::ZERO {
                for j in 0..d2 {
                    out[i * d2 + j] += hik * psi[k * d2 + j];
                }
            }
        }
    }
    out
}

/// Applies `I (x) H` to a vector on a `d1*d2`-dimensional product space.
pub fn apply_factor2(h: &CMatrix, psi: &CVector, d1: usize, d2: usize) -> CVector {
    debug_assert_eq!(psi.len(), d1 * d2);
    debug_assert_eq!(h.nrows(), d2);
    let mut out = CVector::zeros(d1 * d2);
    for j in 0..d2 {
        for l in 0..d2 {
            let hjl = h[(j, l)];
            if hjl != Complex64::ZERO {
                for i in 0..d1 {
                    out[i * d2 + j] += hjl * psi[i * d2 + l];
                }
            }
        }
    }
    out
}

/// Kronecker product with the first factor major, `(A (x) B)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_eigen_diagonalizes() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(-1.0, 0.0)],
        );
        let (vals, vecs) = hermitian_eigen(&m);
        // sigma_y-like spectrum shifted: eigenvalues of [[1,-i],[i,-1]] are +-sqrt(2)
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-12);
        for (k, &val) in vals.iter().enumerate() {
            let v = vecs.column(k).clone_owned();
            let mv = &m * &v;
            let r = &mv - v.map(|z| z * Complex64::new(val, 0.0));
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn factor_applies_match_kronecker() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.2), c(0.5, -0.2), c(-1.0, 0.0)]);
        let psi = CVector::from_vec(vec![c(0.3, 0.1), c(0.2, -0.4), c(0.5, 0.0), c(-0.1, 0.6), c(0.0, 0.2), c(0.7, 0.0)]);
        let id3 = CMatrix::identity(3, 3);
        let full = kron(&a, &id3) * &psi;
        assert!((apply_factor1(&a, &psi, 2, 3) - &full).norm() < 1e-14);
        let b = CMatrix::from_row_slice(3, 3, &[
            c(1.0, 0.0), c(0.0, 1.0), c(0.2, 0.0),
            c(0.0, -1.0), c(0.0, 0.0), c(0.4, 0.1),
            c(0.2, 0.0), c(0.4, -0.1), c(2.0, 0.0),
        ]);
        let id2 = CMatrix::identity(2, 2);
        let full2 = kron(&id2, &b) * &psi;
        assert!((apply_factor2(&b, &psi, 2, 3) - &full2).norm() < 1e-14);
    }
}

