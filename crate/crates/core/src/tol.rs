//! Numerical tolerances used across the crate.
//!
//! Everything here assumes IEEE-754 doubles and dense operators of dimension
//! up to a few hundred, where accumulated rounding stays well below 1e-12
//! relative for the O(d^3) products we perform.

/// Hermiticity tolerance, relative to `max(1, max-norm)` of the matrix.
/// Inputs within this distance of Hermitian are symmetrized, so matrices
/// that went through decimal serialization still validate.
pub const HERMITICITY: f64 = 1e-10;

/// Normalization / realness tolerance: unit norms, unit traces, spectra of
/// density matrices, and imaginary residues of real-valued expectations.
pub const NORMALIZATION: f64 = 1e-9;

/// Deviations at or below this count as zero: the state is (numerically) an
/// eigenvector and deviation vectors or correlation coefficients are
/// undefined.
pub const ZERO_DEV: f64 = 1e-12;

/// Effective-compatibility threshold on `|<[B,C]>|`, scaled by dB*dC when
/// both deviations are non-degenerate so the test is covariant under
/// rescaling either observable.
pub const COMPAT: f64 = 1e-9;

/// Inequality slack tolerance, applied after normalizing by `max(1, |lhs|)`.
pub const SLACK: f64 = 1e-9;

/// Relative spectral cutoff when pseudo-inverting the variance form in the
/// commutant search: directions with variance below `SPECTRAL_CUT * sigma_max`
/// are excluded, exactly as zero-deviation observables are excluded from
/// correlation coefficients.
pub const SPECTRAL_CUT: f64 = 1e-10;

/// Schmidt coefficients at or below this are treated as exactly zero; the
/// bipartite closed forms divide by `a_m^2 + a_n^2` and need all retained
/// modes strictly positive.
pub const SCHMIDT_CUT: f64 = 1e-12;

/// Grid tolerance for 1D spectral computations; discretization error, not
/// floating point, dominates here.
pub const GRID: f64 = 1e-5;

/// Grid tolerance for 2D computations (coarser grids per axis).
pub const GRID_2D: f64 = 1e-3;

/// Runtime-adjustable knobs threaded through the inequality checkers.
///
/// Constructors and moment primitives use the module constants directly;
/// only the quantities a caller may reasonably want to tighten or relax per
/// run (slack and compatibility) live here.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Slack tolerance for the satisfied flag (relative to `max(1, |lhs|)`).
    pub slack: f64,
    /// Effective-compatibility threshold.
    pub compat: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { slack: SLACK, compat: COMPAT }
    }
}
