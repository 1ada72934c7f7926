//! Correlation coefficients, uncertainty product ratios, effective
//! compatibility, and the deviation-vector overlap geometry.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::qcore::{deviation_vector, MomentSet, Observable, QuantumState};
use crate::tol;

/// An uncertainty product ratio `2 dA dB / |<[A,B]>|`, or `Unconstrained`
/// when the commutator expectation vanishes and the ratio is undefined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum UprValue {
    Value(f64),
    Unconstrained,
}

impl UprValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            UprValue::Value(v) => Some(*v),
            UprValue::Unconstrained => None,
        }
    }
}

/// Components of the two deviation-vector inner products
/// `<psi_A|psi_B> = a + i b` and `<psi_A|psi_C> = x + i y`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OverlapGeometry {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub y: f64,
}

/// `K(X,Y) = <{DX,DY}> / (2 dX dY)`, clamped to `[-1, 1]` so downstream
/// `sqrt(1 - K^2)` never sees a negative radicand from roundoff.
pub fn correlation_coefficient(
    state: &QuantumState,
    x: &Observable,
    y: &Observable,
) -> Result<f64> {
    let m = MomentSet::compute(state, &[x, y])?;
    cc_from_moments(&m, 0, 1, x, y)
}

pub(crate) fn cc_from_moments(
    m: &MomentSet,
    i: usize,
    j: usize,
    xi: &Observable,
    xj: &Observable,
) -> Result<f64> {
    if m.dev(i) <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: xi.label().to_string() });
    }
    if m.dev(j) <= tol::ZERO_DEV {
        return Err(CoreError::ZeroDeviation { label: xj.label().to_string() });
    }
    let k = m.anticomm_dev(i, j) / (2.0 * m.dev(i) * m.dev(j));
    Ok(k.clamp(-1.0, 1.0))
}

/// The UPR `2 dA dB / |<[A,B]>|` for a pair of observables.
pub fn upr(state: &QuantumState, a: &Observable, b: &Observable) -> Result<UprValue> {
    let m = MomentSet::compute(state, &[a, b])?;
    let denom = m.comm(0, 1).norm();
    if denom <= tol::NORMALIZATION {
        return Ok(UprValue::Unconstrained);
    }
    Ok(UprValue::Value(2.0 * m.dev(0) * m.dev(1) / denom))
}

/// Whether `B` and `C` are effectively compatible in the state, i.e.
/// `<[B,C]> = 0` within tolerance. Returns the flag and the residual
/// `|<[B,C]>|`. The threshold scales with `dB*dC` when both deviations are
/// non-degenerate, making it covariant under rescaling either observable.
pub fn effective_compatibility(
    state: &QuantumState,
    b: &Observable,
    c: &Observable,
) -> Result<(bool, f64)> {
    effective_compatibility_with(state, b, c, tol::COMPAT)
}

pub fn effective_compatibility_with(
    state: &QuantumState,
    b: &Observable,
    c: &Observable,
    compat_tol: f64,
) -> Result<(bool, f64)> {
    let m = MomentSet::compute(state, &[b, c])?;
    let residual = m.comm(0, 1).norm();
    let scale = if m.dev(0) > tol::ZERO_DEV && m.dev(1) > tol::ZERO_DEV {
        m.dev(0) * m.dev(1)
    } else {
        1.0
    };
    Ok((residual <= compat_tol * scale, residual))
}

/// Deviation-vector overlaps for a pure state and three observables with
/// non-degenerate deviations: `(a, b) = <psi_A|psi_B>` and
/// `(x, y) = <psi_A|psi_C>` componentwise.
///
/// Signs follow `Re<psi_X|psi_Y> = K(X,Y)` and
/// `Im<psi_X|psi_Y> = -<i[X,Y]>/(2 dX dY)`.
pub fn overlap_geometry(
    state: &QuantumState,
    a: &Observable,
    b: &Observable,
    c: &Observable,
) -> Result<OverlapGeometry> {
    let va = deviation_vector(state, a)?;
    let vb = deviation_vector(state, b)?;
    let vc = deviation_vector(state, c)?;
    let ab = va.dotc(&vb);
    let ac = va.dotc(&vc);
    Ok(OverlapGeometry { a: ab.re, b: ab.im, x: ac.re, y: ac.im })
}
