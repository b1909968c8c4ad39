use rand::Rng;
use rand_distr::StandardNormal;

use crate::hermitian::{Complex64, GeneralMatrix, HermitianMatrix};

pub fn random_general<R: Rng>(dim: usize, rng: &mut R) -> GeneralMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    GeneralMatrix::new(dim, entries).unwrap()
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> HermitianMatrix {
    random_general(dim, rng).hermitian_part()
}
