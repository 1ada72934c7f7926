//! States, observables, and the first/second-moment primitives everything
//! else consumes.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::linalg::{
    hermitian_eigen, hermitian_part, hermiticity_deviation, max_norm, CMatrix,
    CVector,
};
use crate::tol;

/// A finite-dimensional Hermitian observable.
///
/// Construction validates Hermiticity (within [`tol::HERMITICITY`], relative)
/// and symmetrizes the stored matrix, so near-Hermitian inputs that survived
/// a decimal round-trip are accepted.
#[derive(Clone, Debug)]
pub struct Observable {
    dim: usize,
    matrix: CMatrix,
    label: String,
}

impl Observable {
    pub fn new(matrix: CMatrix, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if matrix.nrows() != matrix.ncols() {
            return Err(CoreError::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        if matrix.nrows() == 0 {
            return Err(CoreError::InvalidParameter { what: format!("observable '{label}' is empty") });
        }
        let deviation = hermiticity_deviation(&matrix);
        let scale = 1f64.max(max_norm(&matrix));
        if deviation > tol::HERMITICITY * scale {
            return Err(CoreError::NotHermitian { label, deviation });
        }
        let dim = matrix.nrows();
        Ok(Observable { dim, matrix: hermitian_part(&matrix), label })
    }

    /// Identity observable of the given dimension.
    pub fn identity(dim: usize, label: impl Into<String>) -> Self {
        Observable { dim, matrix: CMatrix::identity(dim, dim), label: label.into() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Relabeled copy.
    pub fn with_label(&self, label: impl Into<String>) -> Self {
        Observable { dim: self.dim, matrix: self.matrix.clone(), label: label.into() }
    }
}

/// Constructs a validated observable; the matrix is symmetrized as
/// `(M + M~)/2` when within tolerance of Hermitian.
pub fn make_observable(matrix: CMatrix, label: impl Into<String>) -> Result<Observable> {
    Observable::new(matrix, label)
}

#[derive(Clone, Debug)]
enum StateRepr {
    Pure(CVector),
    Mixed(CMatrix),
}

/// A pure (unit vector) or mixed (density matrix) quantum state.
#[derive(Clone, Debug)]
pub struct QuantumState {
    dim: usize,
    repr: StateRepr,
}

impl QuantumState {
    /// Normalizes a nonzero vector into a pure state.
    pub fn pure(vector: CVector) -> Result<Self> {
        let norm = vector.norm();
        if !norm.is_finite() || norm <= 1e-150 {
            return Err(CoreError::ZeroVector);
        }
        let dim = vector.len();
        Ok(QuantumState { dim, repr: StateRepr::Pure(vector.map(|z| z / norm)) })
    }

    /// Validates a density matrix: Hermitian within tolerance (then
    /// symmetrized), positive semidefinite, unit trace.
    pub fn mixed(rho: CMatrix) -> Result<Self> {
        if rho.nrows() != rho.ncols() {
            return Err(CoreError::NotSquare { rows: rho.nrows(), cols: rho.ncols() });
        }
        let deviation = hermiticity_deviation(&rho);
        if deviation > tol::HERMITICITY * 1f64.max(max_norm(&rho)) {
            return Err(CoreError::NotHermitian { label: "rho".into(), deviation });
        }
        let rho = hermitian_part(&rho);
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > tol::NORMALIZATION {
            return Err(CoreError::TraceNotOne { trace: trace.re });
        }
        let (eigs, _) = hermitian_eigen(&rho);
        let min = eigs.first().copied().unwrap_or(0.0);
        if min < -tol::NORMALIZATION {
            return Err(CoreError::NotPositive { min_eigenvalue: min });
        }
        let dim = rho.nrows();
        Ok(QuantumState { dim, repr: StateRepr::Mixed(rho) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.repr, StateRepr::Pure(_))
    }

    /// The state vector of a pure state.
    pub fn vector(&self) -> Option<&CVector> {
        match &self.repr {
            StateRepr::Pure(v) => Some(v),
            StateRepr::Mixed(_) => None,
        }
    }

    /// The density matrix of a mixed state.
    pub fn density(&self) -> Option<&CMatrix> {
        match &self.repr {
            StateRepr::Mixed(r) => Some(r),
            StateRepr::Pure(_) => None,
        }
    }

    /// Density matrix regardless of kind (`|psi><psi|` for pure states).
    pub fn density_matrix(&self) -> CMatrix {
        match &self.repr {
            StateRepr::Mixed(r) => r.clone(),
            StateRepr::Pure(v) => {
                let n = v.len();
                CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj())
            }
        }
    }

    fn check_dim(&self, x: &Observable) -> Result<()> {
        if x.dim() != self.dim {
            return Err(CoreError::DimMismatch { expected: self.dim, got: x.dim() });
        }
        Ok(())
    }

    /// `<DX DY>` for Hermitian `X`, `Y` with the given means; centering
    /// before multiplying avoids the large-mean cancellation that a plain
    /// `<XY> - <X><Y>` suffers when deviations are small. Conjugate-symmetric
    /// under swap by construction.
    fn centered_prod_expect(&self, x: &CMatrix, mx: f64, y: &CMatrix, my: f64) -> Complex64 {
        match &self.repr {
            StateRepr::Pure(v) => {
                let mut xv = x * v;
                xv -= v.map(|z| z * Complex64::new(mx, 0.0));
                let mut yv = y * v;
                yv -= v.map(|z| z * Complex64::new(my, 0.0));
                xv.dotc(&yv)
            }
            StateRepr::Mixed(rho) => {
                // tr(rho DX DY) = sum_ab (rho DX)_ab (DY)_ba
                let d = rho.nrows();
                let mut dx = x.clone();
                let mut dy = y.clone();
                for i in 0..d {
                    dx[(i, i)] -= Complex64::new(mx, 0.0);
                    dy[(i, i)] -= Complex64::new(my, 0.0);
                }
                let rx = rho * dx;
                let mut acc = Complex64::ZERO;
                for a in 0..d {
                    for b in 0..d {
                        acc += rx[(a, b)] * dy[(b, a)];
                    }
                }
                acc
            }
        }
    }

    fn raw_expect(&self, x: &CMatrix) -> Complex64 {
        match &self.repr {
            StateRepr::Pure(v) => {
                let xv = x * v;
                v.dotc(&xv)
            }
            StateRepr::Mixed(rho) => {
                let mut acc = Complex64::ZERO;
                for a in 0..rho.nrows() {
                    for b in 0..rho.ncols() {
                        acc += rho[(a, b)] * x[(b, a)];
                    }
                }
                acc
            }
        }
    }
}

/// Normalized pure state from a nonzero complex vector.
pub fn make_pure_state(vector: CVector) -> Result<QuantumState> {
    QuantumState::pure(vector)
}

/// Validated mixed state from a density matrix.
pub fn make_mixed_state(rho: CMatrix) -> Result<QuantumState> {
    QuantumState::mixed(rho)
}

/// Purifies a mixed state of dimension `d` into a pure state on `d*d`, using
/// the eigendecomposition of the density matrix. Expectations of `X (x) I`
/// over the purification equal `tr(rho X)`.
pub fn purify(state: &QuantumState) -> Result<QuantumState> {
    let rho = match &state.repr {
        StateRepr::Mixed(r) => r,
        StateRepr::Pure(_) => return Err(CoreError::NotMixed { op: "purify" }),
    };
    let d = state.dim;
    let (eigs, vecs) = hermitian_eigen(rho);
    let mut psi = CVector::zeros(d * d);
    for (k, &lambda) in eigs.iter().enumerate() {
        let w = lambda.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        for a in 0..d {
            psi[a * d + k] += col[a] * Complex64::new(w, 0.0);
        }
    }
    QuantumState::pure(psi)
}

/// Embeds an observable on the first factor of a `d1*d2` product space.
pub fn embed_factor1(x: &Observable, d2: usize) -> Observable {
    let d1 = x.dim();
    let id = CMatrix::identity(d2, d2);
    Observable {
        dim: d1 * d2,
        matrix: x.matrix().kronecker(&id),
        label: x.label().to_string(),
    }
}

/// `<X>` in the given state. The imaginary residue (zero in exact
/// arithmetic for Hermitian `X`) is discarded.
pub fn expectation(state: &QuantumState, x: &Observable) -> Result<f64> {
    state.check_dim(x)?;
    let z = state.raw_expect(x.matrix());
    debug_assert!(z.im.abs() <= tol::NORMALIZATION * 1f64.max(z.re.abs()));
    Ok(z.re)
}

/// Variance `<(DX)^2>`, computed from the centered operator so small
/// deviations of large-mean observables keep full relative precision.
pub fn variance(state: &QuantumState, x: &Observable) -> Result<f64> {
    state.check_dim(x)?;
    let m = state.raw_expect(x.matrix()).re;
    Ok(state.centered_prod_expect(x.matrix(), m, x.matrix(), m).re.max(0.0))
}

/// RMS deviation `DX = sqrt(<X^2> - <X>^2) >= 0`.
pub fn rms_deviation(state: &QuantumState, x: &Observable) -> Result<f64> {
    Ok(variance(state, x)?.sqrt())
}

/// `<[X,Y]> = <[DX,DY]>`. For Hermitian inputs `<DY DX>` is the conjugate of
/// `<DX DY>`, so the result is purely imaginary by construction.
pub fn commutator_expect(state: &QuantumState, x: &Observable, y: &Observable) -> Result<Complex64> {
    state.check_dim(x)?;
    state.check_dim(y)?;
    let mx = state.raw_expect(x.matrix()).re;
    let my = state.raw_expect(y.matrix()).re;
    let z = state.centered_prod_expect(x.matrix(), mx, y.matrix(), my);
    Ok(Complex64::new(0.0, 2.0 * z.im))
}

/// `<i[X,Y]>`, the real expectation of the Hermitian operator `i[X,Y]`.
pub fn icommutator_expect(state: &QuantumState, x: &Observable, y: &Observable) -> Result<f64> {
    Ok(-commutator_expect(state, x, y)?.im)
}

/// `<{DX,DY}>`, real by construction.
pub fn anticommutator_dev_expect(
    state: &QuantumState,
    x: &Observable,
    y: &Observable,
) -> Result<f64> {
    state.check_dim(x)?;
    state.check_dim(y)?;
    let mx = state.raw_expect(x.matrix()).re;
    let my = state.raw_expect(y.matrix()).re;
    Ok(2.0 * state.centered_prod_expect(x.matrix(), mx, y.matrix(), my).re)
}

/// Normalized deviation vector `DX|psi>/dX`, unit norm and orthogonal to
/// `|psi>`. Errors with [`CoreError::ZeroDeviation`] when the state is an
/// eigenvector of `X`.
pub fn deviation_vector(state: &QuantumState, x: &Observable) -> Result<CVector> {
    state.check_dim(x)?;
    let psi = state.vector().ok_or(CoreError::NotPure { op: "deviation_vector" })?;
    let mean = state.raw_expect(x.matrix()).re;
    let mut w = x.matrix() * psi;
    w -= psi.map(|z| z * Complex64::new(mean, 0.0));
    // for a pure state dX = ||DX psi||; normalizing by the vector norm keeps
    // the result unit to machine precision
    let dev = w.norm();
    if dev <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: x.label().to_string() });
    }
    Ok(w.map(|z| z / dev))
}

/// Cached first and second moments for a state and an observable collection:
/// means, deviations, commutator expectations per ordered pair, and centered
/// anticommutator expectations per pair.
#[derive(Clone, Debug)]
pub struct MomentSet {
    means: Vec<f64>,
    devs: Vec<f64>,
    /// `prods[i][j] = <DX_i DX_j>` (centered second moments)
    prods: Vec<Vec<Complex64>>,
}

impl MomentSet {
    pub fn compute(state: &QuantumState, observables: &[&Observable]) -> Result<Self> {
        for x in observables {
            state.check_dim(x)?;
        }
        let n = observables.len();
        let mut means = vec![0.0; n];
        let mut prods = vec![vec![Complex64::ZERO; n]; n];
        match &state.repr {
            StateRepr::Pure(v) => {
                let mut w: Vec<CVector> = observables.iter().map(|x| x.matrix() * v).collect();
                for i in 0..n {
                    means[i] = v.dotc(&w[i]).re;
                    let m = Complex64::new(means[i], 0.0);
                    let wi = &mut w[i];
                    *wi -= v.map(|z| z * m);
                }
                for i in 0..n {
                    for j in i..n {
                        let z = w[i].dotc(&w[j]);
                        prods[i][j] = z;
                        prods[j][i] = z.conj();
                    }
                }
            }
            StateRepr::Mixed(_) => {
                for i in 0..n {
                    means[i] = state.raw_expect(observables[i].matrix()).re;
                }
                for i in 0..n {
                    for j in i..n {
                        let z = state.centered_prod_expect(
                            observables[i].matrix(),
                            means[i],
                            observables[j].matrix(),
                            means[j],
                        );
                        prods[i][j] = z;
                        prods[j][i] = z.conj();
                    }
                }
            }
        }
        let devs = (0..n).map(|i| prods[i][i].re.max(0.0).sqrt()).collect();
        Ok(MomentSet { means, devs, prods })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.means[i]
    }

    pub fn dev(&self, i: usize) -> f64 {
        self.devs[i]
    }

    pub fn variance(&self, i: usize) -> f64 {
        self.devs[i] * self.devs[i]
    }

    /// `<[X_i, X_j]>`, purely imaginary.
    pub fn comm(&self, i: usize, j: usize) -> Complex64 {
        self.prods[i][j] - self.prods[j][i]
    }

    /// `<i[X_i, X_j]>` as a real number.
    pub fn icomm(&self, i: usize, j: usize) -> f64 {
        -(self.comm(i, j).im)
    }

    /// `<{DX_i, DX_j}>`.
    pub fn anticomm_dev(&self, i: usize, j: usize) -> f64 {
        (self.prods[i][j] + self.prods[j][i]).re
    }
}
