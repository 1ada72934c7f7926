//! Seeded random instance generators for sweeps, oracles, and tests.
//!
//! All randomness flows from explicit seeds through ChaCha8, so every sweep
//! is reproducible bit-for-bit regardless of thread schedule.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::linalg::{hermitian_part, CMatrix, CVector};
use crate::qcore::{make_observable, Observable, QuantumState};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for instance `index` under a common seed.
pub fn rng_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}

fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn random_complex_vector(rng: &mut impl Rng, dim: usize) -> CVector {
    CVector::from_fn(dim, |_, _| Complex64::new(normal(rng), normal(rng)))
}

/// Haar-ish random pure state (normalized complex Gaussian vector).
pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> QuantumState {
    QuantumState::pure(random_complex_vector(rng, dim)).expect("gaussian vector is nonzero")
}

/// Full-rank random mixed state from a Ginibre factor, `G G~ / tr`.
pub fn random_mixed_state(rng: &mut impl Rng, dim: usize) -> QuantumState {
    let g = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    QuantumState::mixed(rho.map(|z| z / tr)).expect("gaussian wishart is a density matrix")
}

/// GUE-style random Hermitian matrix, entries O(1).
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    hermitian_part(&g)
}

pub fn random_observable(rng: &mut impl Rng, dim: usize, label: impl Into<String>) -> Observable {
    make_observable(random_hermitian(rng, dim), label).expect("hermitian by construction")
}

/// Random unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| Complex64::new(normal(rng), normal(rng)));
    let qr = g.qr();
    qr.q()
}

/// Random observable effectively compatible with `b` in the state, built by
/// projecting a random Hermitian onto the hyperplane `Im<[B, .]> = 0` in the
/// Frobenius metric: the hyperplane normal is the Hermitian `i[B, rho]`.
pub fn random_in_effective_commutant(
    rng: &mut impl Rng,
    state: &QuantumState,
    b: &Observable,
    label: impl Into<String>,
) -> Result<Observable> {
    let rho = state.density_matrix();
    let s = (b.matrix() * &rho - &rho * b.matrix()).map(|z| z * Complex64::I);
    let s = hermitian_part(&s);
    let s_norm2: f64 = s.iter().map(|z| z.norm_sqr()).sum();
    let mut c = random_hermitian(rng, state.dim());
    if s_norm2 > 1e-20 {
        let overlap: f64 = s
            .iter()
            .zip(c.iter())
            .map(|(sz, cz)| (sz.conj() * cz).re)
            .sum();
        let t = overlap / s_norm2;
        c -= s.map(|z| z * Complex64::new(t, 0.0));
    }
    make_observable(c, label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::commutator_expect;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = {
            let mut r = rng_stream(7, 0);
            (0..4).map(|_| normal(&mut r)).collect()
        };
        let b: Vec<f64> = {
            let mut r = rng_stream(7, 0);
            (0..4).map(|_| normal(&mut r)).collect()
        };
        let c: Vec<f64> = {
            let mut r = rng_stream(7, 1);
            (0..4).map(|_| normal(&mut r)).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn commutant_projection_lands_on_the_hyperplane() {
        let mut rng = seeded_rng(11);
        for dim in 2..6 {
            let s = if dim % 2 == 0 {
                random_pure_state(&mut rng, dim)
            } else {
                random_mixed_state(&mut rng, dim)
            };
            let b = random_observable(&mut rng, dim, "b");
            let w = random_in_effective_commutant(&mut rng, &s, &b, "w").unwrap();
            let resid = commutator_expect(&s, &b, &w).unwrap().norm();
            assert!(resid < 1e-12, "residual {resid}");
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = seeded_rng(3);
        let u = random_unitary(&mut rng, 4);
        let err = crate::linalg::max_norm(&(&u * u.adjoint() - CMatrix::identity(4, 4)));
        assert!(err < 1e-12);
    }
}
