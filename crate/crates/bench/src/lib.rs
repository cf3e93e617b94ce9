//! Shared helpers for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinqfi_core::{Complex64, HermitianMatrix, Matrix, ModelParams};

/// Seeded dense Hermitian matrix with entries of order one.
pub fn random_hermitian(dim: usize, seed: u64) -> HermitianMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(dim);
    for i in 0..dim {
        m.set(i, i, Complex64::new(rng.random_range(-1.0..1.0), 0.0));
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m.set(i, j, z);
            m.set(j, i, z.conj());
        }
    }
    HermitianMatrix::from_matrix(m).expect("hermitian by construction")
}

/// Seeded two-spin parameter draw in the usual sweep ranges.
pub fn random_params(seed: u64) -> ModelParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ModelParams {
        coupling: rng.random_range(-3.0..=3.0),
        homogeneous_field: rng.random_range(-3.0..=3.0),
        staggered_field: rng.random_range(-3.0..=3.0),
        dm_coupling: rng.random_range(-3.0..=3.0),
        temperature: rng.random_range(0.1..=2.0),
        sites: 2,
    }
}
