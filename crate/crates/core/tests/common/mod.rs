#![allow(dead_code)]

use guesswork::{BlochVector, ComplexMatrix, Ensemble, HermitianOperator, Ordering};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the unit ball.
pub fn bloch_in_ball(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 <= 1.0 {
            return BlochVector::new(v[0], v[1], v[2]).unwrap();
        }
    }
}

/// The 100 random uniform qubit ensembles, `|M|` cycling through 2..=6.
pub fn random_qubit_ensembles() -> Vec<Ensemble> {
    let mut rng = rng(20_240_601);
    (0..100)
        .map(|i| {
            let count = 2 + i % 5;
            let vectors: Vec<BlochVector> = (0..count).map(|_| bloch_in_ball(&mut rng)).collect();
            Ensemble::uniform_qubit(&vectors).unwrap()
        })
        .collect()
}

pub fn random_complex_matrix(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> HermitianOperator {
    let g = random_complex_matrix(rng, d);
    let sum = ComplexMatrix::from_fn(d, |i, j| (g.get(i, j) + g.get(j, i).conj()) * 0.5);
    HermitianOperator::new(sum).unwrap()
}

pub fn random_psd(rng: &mut impl Rng, d: usize) -> HermitianOperator {
    let g = random_complex_matrix(rng, d);
    HermitianOperator::new(g.matmul(&g.adjoint())).unwrap()
}

/// Random ensemble with arbitrary priors and mixed states in dimension `d`.
pub fn random_ensemble(rng: &mut impl Rng, d: usize, count: usize) -> Ensemble {
    let ops: Vec<HermitianOperator> = (0..count).map(|_| random_psd(rng, d)).collect();
    let total: f64 = ops.iter().map(|o| o.trace()).sum();
    Ensemble::new(
        d,
        ops.iter()
            .enumerate()
            .map(|(m, o)| (format!("m{m}"), o * (1.0 / total)))
            .collect(),
    )
    .unwrap()
}

pub fn random_ordering(rng: &mut impl Rng, count: usize) -> Ordering {
    let mut v: Vec<usize> = (0..count).collect();
    v.shuffle(rng);
    Ordering::new(v).unwrap()
}
