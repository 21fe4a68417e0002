#![allow(dead_code)]

use num_complex::Complex64;
use walkcount::{DenseUnitary, HilbertDims, SimRng, StateVector};

pub fn random_complex(rng: &mut SimRng) -> Complex64 {
    Complex64::new(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0)
}

/// Random unitary from Gram-Schmidt on random columns.
pub fn random_unitary(n: usize, rng: &mut SimRng) -> DenseUnitary<f64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        for q in &cols {
            let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let entries = (0..n * n).map(|i| cols[i % n][i / n]).collect();
    DenseUnitary::new(HilbertDims::single(n).unwrap(), entries).unwrap()
}

pub fn random_state(n: usize, rng: &mut SimRng) -> StateVector<f64> {
    let amps = (0..n).map(|_| random_complex(rng)).collect();
    StateVector::from_raw(HilbertDims::single(n).unwrap(), amps)
        .unwrap()
        .normalized()
        .unwrap()
}

/// `U = V diag(e^{2πi λ_j}) V†` with the columns of `V` as eigenvectors.
pub fn unitary_with_phases(phases: &[f64], rng: &mut SimRng) -> (DenseUnitary<f64>, DenseUnitary<f64>) {
    let n = phases.len();
    let v = random_unitary(n, rng);
    let diag: Vec<Complex64> = phases
        .iter()
        .map(|l| Complex64::from_polar(1.0, std::f64::consts::TAU * l))
        .collect();
    let d = DenseUnitary::diagonal(HilbertDims::single(n).unwrap(), &diag).unwrap();
    let u = v.compose(&d).unwrap().compose(&v.dagger()).unwrap();
    (u, v)
}

pub fn column_state(u: &DenseUnitary<f64>, j: usize) -> StateVector<f64> {
    StateVector::new(HilbertDims::single(u.dim()).unwrap(), u.column(j)).unwrap()
}
