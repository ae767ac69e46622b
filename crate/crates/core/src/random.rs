//! Random sampling of states, unitaries, POVMs and measurement directions.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{ComplexMatrix, Factorization};
use crate::states::{DensityMatrix, QubitObservable};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Uniformly distributed unit vector in three dimensions.
pub fn direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-9 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn observable<R: Rng + ?Sized>(rng: &mut R) -> QubitObservable {
    QubitObservable::new(direction(rng)).expect("unit direction")
}

/// Random right-handed orthonormal frame; returned as its three axes.
pub fn frame<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 3]; 3] {
    let u = direction(rng);
    let mut v = direction(rng);
    let d = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    for k in 0..3 {
        v[k] -= d * u[k];
    }
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if n < 1e-6 {
        return frame(rng);
    }
    let v = [v[0] / n, v[1] / n, v[2] / n];
    let w = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    [u, v, w]
}

/// Haar-random unitary from Gram–Schmidt on a complex Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        for c in &cols {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let n = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if n > 1e-9 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Random pure state on the given factorization.
pub fn pure_state<R: Rng + ?Sized>(f: &Factorization, rng: &mut R) -> DensityMatrix {
    let mut ket: Vec<Complex64> = (0..f.total_dim()).map(|_| complex_gaussian(rng)).collect();
    let n = ket.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    ket.iter_mut().for_each(|z| *z /= n);
    DensityMatrix::pure(&ket, f.clone()).expect("valid ket")
}

/// Random mixed state `G G† / Tr(G G†)` with `G` a `d × rank` complex Gaussian matrix.
pub fn density_matrix<R: Rng + ?Sized>(f: &Factorization, rank: usize, rng: &mut R) -> DensityMatrix {
    let d = f.total_dim();
    let rank = rank.clamp(1, d);
    let data: Vec<Complex64> = (0..d * rank).map(|_| complex_gaussian(rng)).collect();
    let g = ComplexMatrix::from_vec(d, rank, data).expect("shape");
    let gg = g.matmul(&g.adjoint()).expect("shape");
    let tr = gg.trace().re;
    let mut m = gg.scale_real(1.0 / tr);
    for i in 0..d {
        for j in (i + 1)..d {
            let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    DensityMatrix::new(m, f.clone()).expect("valid density matrix")
}

/// Two-qubit state of random rank, sometimes pure, sometimes a product.
pub fn two_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let f = Factorization::qubits(2);
    match rng.gen_range(0..6) {
        0 => pure_state(&f, rng),
        1 => {
            let a = pure_state(&Factorization::qubits(1), rng);
            let b = density_matrix(&Factorization::qubits(1), 2, rng);
            DensityMatrix::product(&[&a, &b]).expect("product")
        }
        k => density_matrix(&f, k - 1, rng),
    }
}

/// Rank-one projective measurement in a random orthonormal basis.
pub fn projective_povm<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let u = unitary(dim, rng);
    (0..dim)
        .map(|j| {
            let col: Vec<Complex64> = (0..dim).map(|i| u[(i, j)]).collect();
            ComplexMatrix::outer(&col, &col)
        })
        .collect()
}

/// Non-projective POVM: a random convex mixture of two projective measurements.
pub fn mixed_povm<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let t: f64 = rng.gen_range(0.05..0.95);
    let first = projective_povm(dim, rng);
    let second = projective_povm(dim, rng);
    first
        .iter()
        .map(|e| e.scale_real(t))
        .chain(second.iter().map(|e| e.scale_real(1.0 - t)))
        .collect()
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(gaussian(rng), 0.0);
        for j in (i + 1)..dim {
            let z = complex_gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = unitary(4, &mut rng);
        let uu = u.matmul(&u.adjoint()).unwrap();
        assert!(uu.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn povms_sum_to_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for povm in [projective_povm(4, &mut rng), mixed_povm(4, &mut rng)] {
            let sum = povm.iter().fold(ComplexMatrix::zeros(4, 4), |acc, e| &acc + e);
            assert!(sum.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        }
    }

    #[test]
    fn frame_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = frame(&mut rng);
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = (0..3).map(|k| f[i][k] * f[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let rho = two_qubit_state(&mut rng);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
    }
}
