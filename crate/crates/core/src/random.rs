//! Seeded random inputs for the randomized suites and tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{self, ComplexMatrix};

/// Perturbation size for random generators `T = I + εR`.
pub const GENERATOR_PERTURBATION: f64 = 0.3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex number with real and imaginary parts uniform in `[0, 1)`.
pub fn unit_square(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random::<f64>(), rng.random::<f64>())
}

/// Complex number with real and imaginary parts uniform in `[-1, 1)`.
pub fn centered(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// `T = I + εR` with `R` entries uniform in the complex unit square.
pub fn random_generator(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng(seed);
    let r = ComplexMatrix::from_fn(dim, |_, _| unit_square(&mut rng));
    &ComplexMatrix::identity(dim) + &r.scale(Complex64::new(GENERATOR_PERTURBATION, 0.0))
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    (0..dim).map(|_| centered(rng)).collect()
}

pub fn random_vectors(rng: &mut impl Rng, dim: usize, count: usize) -> Vec<Vec<Complex64>> {
    (0..count).map(|_| random_vector(rng, dim)).collect()
}

/// Normalized vector supported on the first `support` coordinates, every
/// coefficient bounded away from zero.
pub fn random_unit_vector(rng: &mut impl Rng, dim: usize, support: usize) -> Vec<Complex64> {
    let mut u = vec![Complex64::new(0.0, 0.0); dim];
    for c in u.iter_mut().take(support) {
        let modulus = rng.random_range(0.2..1.0);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        *c = Complex64::from_polar(modulus, phase);
    }
    let n = linalg::norm(&u);
    u.iter_mut().for_each(|c| *c /= n);
    u
}

/// Random Hermitian matrix with entries in the centered unit square.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| centered(rng)).hermitian_part()
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    linalg::hermitian_eig(&random_hermitian(rng, dim), linalg::DEFAULT_TOL)
        .expect("random Hermitian matrices diagonalize")
        .eigenvectors
}
