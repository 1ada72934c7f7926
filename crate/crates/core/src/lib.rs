//! Correlation coefficients, uncertainty product ratios, and the family of
//! generalized Robertson-Schroedinger inequalities for finite-dimensional
//! quantum states — plus the commutant searches and closed forms that
//! tighten those bounds.
//!
//! The crate is organized as:
//! - [`qcore`]: states, observables, and moment primitives;
//! - [`measures`]: correlation coefficients, UPRs, effective compatibility,
//!   deviation-vector geometry;
//! - [`inequalities`]: one auditable checker per named relation, plus a
//!   suite runner;
//! - [`commutant`]: constrained Rayleigh maximization of the squared CC over
//!   an effective commutant, with a random-sampling oracle;
//! - [`bipartite`]: Schmidt analysis and the closed-form second-subsystem
//!   optimum;
//! - [`continuum`]: grid-discretized wave-packet analogues (estimator CCs,
//!   the two-quanton Gaussian pair);
//! - [`sweep`]: seeded, reproducible random-instance sweeps;
//! - [`random`]: the instance generators behind them.
//!
//! Everything is pure and immutable after construction; all randomness flows
//! from explicit seeds.

pub mod bipartite;
pub mod commutant;
pub mod continuum;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod measures;
pub mod qcore;
pub mod random;
pub mod sweep;
pub mod tol;

pub use error::{CoreError, Result};
pub use linalg::{CMatrix, CVector};
pub use qcore::{
    make_mixed_state, make_observable, make_pure_state, purify, MomentSet, Observable,
    QuantumState,
};
