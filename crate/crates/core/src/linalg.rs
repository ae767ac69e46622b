//! Dense complex linear algebra over explicitly factorized tensor-product spaces.
//!
//! Matrices are stored row-major. Composite basis indices follow the convention
//! that the leftmost tensor factor is the most significant digit:
//! `i = a0·(d1·d2·…) + a1·(d2·…) + …`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C1;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| Complex64::new(x, 0.0))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Checked product; `Mul` panics on mismatch instead.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::Dimension(format!(
                "trace of product needs compatible shapes, got {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = C0;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        Ok(acc)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from Hermiticity, `max |M − M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    ///
    /// Uses the real symmetric embedding `[[Re, −Im], [Im, Re]]`, whose spectrum
    /// is that of the input with every eigenvalue doubled.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::Dimension("eigenvalues need a square matrix".into()));
        }
        let n = self.rows;
        let m = 2 * n;
        let mut a = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                // symmetrize so tiny Hermiticity defects do not leak into the solver
                let z = 0.5 * (self[(i, j)] + self[(j, i)].conj());
                a[i * m + j] = z.re;
                a[(i + n) * m + j + n] = z.re;
                a[i * m + j + n] = -z.im;
                a[(i + n) * m + j] = z.im;
            }
        }
        let mut eig = symmetric_eigenvalues(&mut a, m);
        eig.sort_by(f64::total_cmp);
        Ok(eig.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Ordered subsystem dimensions of a composite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    dims: Vec<usize>,
}

impl Factorization {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension("factorization needs at least one factor".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Dimension(format!("subsystem dimension {d} is below 2")));
        }
        Ok(Self { dims })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self { dims: vec![2; n.max(1)] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }

    fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let x = a[(ai, aj)];
            if x == C0 {
                continue;
            }
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out[(ai * b.rows + bi, aj * b.cols + bj)] = x * b[(bi, bj)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a non-empty sequence, leftmost factor first.
pub fn kron_all<'a, I>(factors: I) -> ComplexMatrix
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut it = factors.into_iter();
    let first = it.next().expect("kron_all needs at least one factor").clone();
    it.fold(first, |acc, m| kron(&acc, m))
}

/// Kronecker product of state vectors.
pub fn kron_vec(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| a * b))
        .collect()
}

/// Traces out every subsystem not listed in `keep`.
///
/// Kept subsystems appear in the result in increasing index order.
pub fn partial_trace(m: &ComplexMatrix, f: &Factorization, keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = f.total_dim();
    if !m.is_square() || m.rows != dim {
        return Err(Error::Dimension(format!(
            "factorization {:?} (dim {dim}) does not match a {}x{} matrix",
            f.dims, m.rows, m.cols
        )));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::Dimension("partial trace must keep at least one subsystem".into()));
    }
    if let Some(&bad) = kept.iter().find(|&&k| k >= f.parties()) {
        return Err(Error::Dimension(format!(
            "subsystem {bad} out of range for {} parties",
            f.parties()
        )));
    }
    let n = f.parties();
    let is_kept: Vec<bool> = (0..n).map(|k| kept.contains(&k)).collect();
    let kept_dim: usize = kept.iter().map(|&k| f.dims[k]).product();

    // Precompute, per composite index, its kept-subsystem index and traced-subsystem index.
    let mut digits = vec![0; n];
    let mut kept_index = vec![0; dim];
    let mut traced_index = vec![0; dim];
    for i in 0..dim {
        f.digits(i, &mut digits);
        let (mut ki, mut ti) = (0, 0);
        for k in 0..n {
            if is_kept[k] {
                ki = ki * f.dims[k] + digits[k];
            } else {
                ti = ti * f.dims[k] + digits[k];
            }
        }
        kept_index[i] = ki;
        traced_index[i] = ti;
    }

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for i in 0..dim {
        for j in 0..dim {
            if traced_index[i] == traced_index[j] {
                out[(kept_index[i], kept_index[j])] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Thin singular value decomposition `m = u · diag(s) · v†`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.s.len();
        let mut us = self.u.clone();
        for i in 0..us.rows {
            for j in 0..k {
                us[(i, j)] *= self.s[j];
            }
        }
        &us * &self.v.adjoint()
    }
}

/// One-sided Jacobi SVD; singular values are returned in descending order.
pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows < m.cols {
        let t = svd(&m.adjoint());
        return Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        };
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(cols);

    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = C0;
                for i in 0..rows {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    alpha += ap.norm_sqr();
                    beta += aq.norm_sqr();
                    gamma += ap.conj() * aq;
                }
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // rephase column q so that the p/q overlap becomes real and positive
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)] * phase;
                    a[(i, p)] = ap * c - aq * s;
                    a[(i, q)] = ap * s + aq * c;
                }
                for i in 0..cols {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * phase;
                    v[(i, p)] = vp * c - vq * s;
                    v[(i, q)] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let mut u = ComplexMatrix::zeros(rows, cols);
    let mut vs = ComplexMatrix::zeros(cols, cols);
    let mut s = Vec::with_capacity(cols);
    for (new_j, &old_j) in order.iter().enumerate() {
        let sigma = norms[old_j];
        s.push(sigma);
        for i in 0..rows {
            if sigma > 0.0 {
                u[(i, new_j)] = a[(i, old_j)] / sigma;
            }
        }
        for i in 0..cols {
            vs[(i, new_j)] = v[(i, old_j)];
        }
    }
    Svd { u, s, v: vs }
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    svd(m).s
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Cyclic Jacobi eigenvalue iteration on a dense real symmetric matrix (destroys `a`).
fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        let scale: f64 = (0..n).map(|i| a[i * n + i] * a[i * n + i]).sum::<f64>() + off;
        if off <= 1e-32 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Pauli matrices and friends.
pub mod pauli {
    use super::*;

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_vec(
            2,
            2,
            vec![C0, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), C0],
        )
        .unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    /// `[σx, σy, σz]`.
    pub fn xyz() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }

    /// `n·σ` for a real 3-vector.
    pub fn dot(n: [f64; 3]) -> ComplexMatrix {
        ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(n[2], 0.0),
                Complex64::new(n[0], -n[1]),
                Complex64::new(n[0], n[1]),
                Complex64::new(-n[2], 0.0),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kron_identity() {
        let i4 = kron(&pauli::identity(), &pauli::identity());
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_x_z_block_structure() {
        let got = kron(&pauli::x(), &pauli::z());
        let want = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn kron_z_z_diagonal() {
        let got = kron(&pauli::z(), &pauli::z());
        assert_eq!(got, ComplexMatrix::diagonal(&[c(1.0), c(-1.0), c(-1.0), c(1.0)]));
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [c(s), c(0.0), c(0.0), c(s)];
        let rho = ComplexMatrix::outer(&phi, &phi);
        let f = Factorization::qubits(2);
        let a = partial_trace(&rho, &f, &[0]).unwrap();
        assert!(a.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_mismatch() {
        let f = Factorization::qubits(3);
        assert!(partial_trace(&ComplexMatrix::identity(4), &f, &[0]).is_err());
        let f = Factorization::qubits(2);
        assert!(partial_trace(&ComplexMatrix::identity(4), &f, &[2]).is_err());
        assert!(partial_trace(&ComplexMatrix::identity(4), &f, &[]).is_err());
    }

    #[test]
    fn partial_trace_keeps_middle_of_three() {
        // ρ = |0⟩⟨0| ⊗ |1⟩⟨1| ⊗ I/2
        let p0 = ComplexMatrix::diagonal(&[c(1.0), c(0.0)]);
        let p1 = ComplexMatrix::diagonal(&[c(0.0), c(1.0)]);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let rho = kron_all([&p0, &p1, &half]);
        let got = partial_trace(&rho, &Factorization::qubits(3), &[1]).unwrap();
        assert!(got.max_abs_diff(&p1) < 1e-15);
        let got = partial_trace(&rho, &Factorization::qubits(3), &[2, 0]).unwrap();
        assert!(got.max_abs_diff(&kron(&p0, &half)) < 1e-15);
    }

    #[test]
    fn factorization_validates() {
        assert!(Factorization::new(vec![]).is_err());
        assert!(Factorization::new(vec![2, 1]).is_err());
        assert_eq!(Factorization::new(vec![2, 3]).unwrap().total_dim(), 6);
    }

    #[test]
    fn singular_values_identity() {
        assert_eq!(singular_values(&ComplexMatrix::identity(2)), vec![1.0, 1.0]);
    }

    #[test]
    fn singular_values_of_abs_c3322_alpha() {
        let abs_alpha = ComplexMatrix::from_real_rows(&[
            &[1.0, 1.0, 1.0],
            &[1.0, 1.0, 1.0],
            &[1.0, 1.0, 0.0],
        ]);
        let s = singular_values(&abs_alpha);
        assert!((s[0] - (1.0 + 3f64.sqrt())).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn svd_reconstructs_complex_rectangular() {
        let m = ComplexMatrix::from_vec(
            2,
            3,
            vec![
                Complex64::new(1.0, 2.0),
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(3.0, -1.0),
                Complex64::new(0.25, 0.75),
                Complex64::new(-2.0, 0.0),
            ],
        )
        .unwrap();
        let d = svd(&m);
        assert!(d.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn hermitian_eigenvalues_of_pauli_y() {
        let e = pauli::y().hermitian_eigenvalues().unwrap();
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_dot_matches_components() {
        let n = [0.6, 0.0, 0.8];
        let want = &pauli::x().scale_real(0.6) + &pauli::z().scale_real(0.8);
        assert!(pauli::dot(n).max_abs_diff(&want) < 1e-15);
    }
}
