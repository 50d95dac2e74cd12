//! Seeded random inputs for the randomized numerical steps.
//!
//! All randomness in the crate flows through an explicitly passed
//! [`QgRng`], so every result is reproducible from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::tenscore::{c, CMatrix, CVector, C64};

pub type QgRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> QgRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| gaussian(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let m = random_matrix(rng, n, n);
    (&m + m.adjoint()) * c(0.5, 0.0)
}

/// Orthogonal projection onto a random `rank`-dimensional subspace of `ℂⁿ`.
pub fn random_projection(rng: &mut impl Rng, n: usize, rank: usize) -> CMatrix {
    let m = random_matrix(rng, n, rank);
    let q = m.qr().q();
    &q * q.adjoint()
}

/// Random unitary via the QR decomposition of a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    random_matrix(rng, n, n).qr().q()
}
