#![allow(dead_code)]

use num_complex::Complex64;
use qmeasure::hilbert::{ComplexMatrix, DensityOperator, SpectralObservable, StateVector};
use qmeasure::measurement::MeasurementModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> StateVector {
    loop {
        let a = random_amplitudes(rng, dim);
        if a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3 {
            return StateVector::normalized(a).unwrap();
        }
    }
}

/// Modified Gram–Schmidt on random vectors.
pub fn random_basis(rng: &mut impl Rng, dim: usize) -> Vec<StateVector> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = random_amplitudes(rng, dim);
        for _ in 0..2 {
            for b in &basis {
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= overlap * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
        .into_iter()
        .map(|v| StateVector::new(v).unwrap())
        .collect()
}

/// Distinct, well-separated eigenvalues.
pub fn random_eigenvalues(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    (0..d)
        .map(|k| k as f64 - 0.4 * d as f64 + rng.random_range(0.0..0.5))
        .collect()
}

pub fn random_observable(rng: &mut impl Rng, d: usize) -> SpectralObservable {
    let eigs = random_eigenvalues(rng, d);
    let basis = random_basis(rng, d);
    SpectralObservable::from_eigenbasis(eigs, &basis).unwrap()
}

/// Random object eigenbasis and ready state. Every third model also gets a
/// larger apparatus with random pointer eigenvectors.
pub fn random_model(rng: &mut impl Rng, d: usize) -> MeasurementModel {
    let observable = random_observable(rng, d);
    let (ready, pointers) = if rng.random_range(0..3) == 0 {
        let m = d + rng.random_range(1..3);
        let pointers = random_basis(rng, m).into_iter().take(d).collect();
        (random_state(rng, m), pointers)
    } else {
        let pointers = (0..d).map(|k| StateVector::basis(d, k).unwrap()).collect();
        (random_state(rng, d), pointers)
    };
    MeasurementModel::new(observable, ready, pointers).unwrap()
}

pub fn random_density(rng: &mut impl Rng, d: usize) -> DensityOperator {
    let k = rng.random_range(1..=d + 1);
    let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let parts: Vec<(f64, StateVector)> = weights
        .into_iter()
        .map(|w| (w / total, random_state(rng, d)))
        .collect();
    DensityOperator::mixture(&parts).unwrap()
}

/// Matrix with the given vectors as columns.
pub fn columns(vectors: &[StateVector]) -> ComplexMatrix {
    let n = vectors.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for v in vectors {
            entries.push(v.amplitudes()[i]);
        }
    }
    ComplexMatrix::new(n, entries).unwrap()
}

pub fn random_unitary(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    columns(&random_basis(rng, d))
}

/// `Σ cₙ φₙ ⊗ ξₙ`, assembled entry by entry.
pub fn correlated_oracle(model: &MeasurementModel, psi: &StateVector) -> Vec<Complex64> {
    let m = model.apparatus_dim();
    let mut out = vec![Complex64::new(0.0, 0.0); model.object_dim() * m];
    for (phi, xi) in model
        .object_basis()
        .iter()
        .zip(model.pointer_eigenvectors())
    {
        let c = phi.inner(psi);
        for (i, p) in phi.amplitudes().iter().enumerate() {
            for (k, x) in xi.amplitudes().iter().enumerate() {
                out[i * m + k] += c * p * x;
            }
        }
    }
    out
}

pub fn vec_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
