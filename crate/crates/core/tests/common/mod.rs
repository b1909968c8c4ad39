#![allow(dead_code)]

use coexist::exemplars::{norm3, qubit_effect};
use coexist::{Complex64, Effect, GeneralMatrix, HermitianMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn random_general<R: Rng>(dim: usize, rng: &mut R) -> GeneralMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    GeneralMatrix::new(dim, entries).unwrap()
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> HermitianMatrix {
    random_general(dim, rng).hermitian_part()
}

pub fn random_unit_vector<R: Rng>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// Uniform direction in R^3 scaled to length `r`.
pub fn bloch_vector<R: Rng>(r: f64, rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = norm3(v);
        if n > 1e-6 {
            return [v[0] / n * r, v[1] / n * r, v[2] / n * r];
        }
    }
}

/// Bloch vector uniform in the unit ball.
pub fn ball_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    let r = rng.random::<f64>().cbrt();
    bloch_vector(r, rng)
}

pub fn unbiased<R: Rng>(rng: &mut R) -> ([f64; 3], Effect) {
    let v = ball_vector(rng);
    (v, qubit_effect(1.0, v).unwrap())
}

/// Three mutually orthogonal directions with the given lengths.
pub fn orthogonal_triple<R: Rng>(lengths: [f64; 3], rng: &mut R) -> [[f64; 3]; 3] {
    let a = bloch_vector(1.0, rng);
    let mut b = bloch_vector(1.0, rng);
    let dot: f64 = (0..3).map(|k| a[k] * b[k]).sum();
    for k in 0..3 {
        b[k] -= dot * a[k];
    }
    let nb = norm3(b);
    let b = [b[0] / nb, b[1] / nb, b[2] / nb];
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let scale = |v: [f64; 3], r: f64| [v[0] * r, v[1] * r, v[2] * r];
    [scale(a, lengths[0]), scale(b, lengths[1]), scale(c, lengths[2])]
}

/// Random effect from a Hermitian matrix squeezed into [0, 1] affinely.
pub fn random_effect<R: Rng>(dim: usize, rng: &mut R) -> Effect {
    let h = random_hermitian(dim, rng);
    let vals = h.eigenvalues();
    let (lo, hi) = (vals[0], vals[dim - 1]);
    let shifted = &h - &HermitianMatrix::identity(dim).scale(lo);
    let u: f64 = rng.random();
    Effect::new(shifted.scale(u / (hi - lo))).unwrap()
}

/// Largest `c` with `A − c·X ≥ 0`, by bisection on the minimum eigenvalue.
pub fn largest_multiple_below(a: &HermitianMatrix, x: &HermitianMatrix, upper: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, upper);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (a - &x.scale(mid)).min_eigenvalue() >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
