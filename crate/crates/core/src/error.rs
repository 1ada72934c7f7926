use thiserror::Error;

/// Errors produced by state/observable construction and the checkers.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoreError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix '{label}' is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { label: String, deviation: f64 },

    #[error("state vector has zero norm")]
    ZeroVector,

    #[error("density matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("density matrix trace is {trace:.12}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("observable '{label}' has zero deviation in this state")]
    ZeroDeviation { label: String },

    #[error("observables are not effectively compatible (|<[B,C]>| = {residual:.3e})")]
    NotEffectivelyCompatible { residual: f64 },

    #[error("degenerate state transformation (radicand {radicand:.3e})")]
    DegenerateTransform { radicand: f64 },

    #[error("{op} requires a pure state")]
    NotPure { op: &'static str },

    #[error("{op} requires a mixed (density-matrix) state")]
    NotMixed { op: &'static str },

    #[error("dimension {dim} does not factor as {d1} x {d2}")]
    DimFactorMismatch { dim: usize, d1: usize, d2: usize },

    #[error("grid too coarse: {points_per_sigma:.2} points per standard deviation (need >= 8)")]
    GridTooCoarse { points_per_sigma: f64 },

    #[error("grid length {n} is not a power of two")]
    NotPowerOfTwo { n: usize },

    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimTooLarge { dim: usize, cap: usize },

    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    #[error("internal consistency check failed: {what} (delta {delta:.3e})")]
    Inconsistent { what: String, delta: f64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
