//! Density matrices, the named state families, and Bloch-level descriptors.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix, Factorization, HERMITIAN_TOL};

/// Trace must equal one within this tolerance.
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
pub const PSD_FLOOR: f64 = -1e-10;
/// Slack allowed on Bloch-vector norms and correlator entries.
pub const BLOCH_TOL: f64 = 1e-10;

const C0: Complex64 = Complex64::new(0.0, 0.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A Hermitian, positive semidefinite, unit-trace matrix over a qubit (or qudit) factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    factorization: Factorization,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, factorization: Factorization) -> Result<Self> {
        let dim = factorization.total_dim();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::Dimension(format!(
                "factorization {:?} needs a {dim}x{dim} matrix, got {}x{}",
                factorization.dims(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - c(1.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = matrix.hermitian_eigenvalues()?[0];
        if min_eig < PSD_FLOOR {
            return Err(Error::InvalidState(format!(
                "smallest eigenvalue {min_eig:.3e} is negative"
            )));
        }
        Ok(Self {
            matrix,
            factorization,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn pure(ket: &[Complex64], factorization: Factorization) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!("ket norm is {norm}, expected 1")));
        }
        Self::new(ComplexMatrix::outer(ket, ket), factorization)
    }

    /// Convex mixture `Σ w_k ρ_k`; weights must be non-negative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (w, rho) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidParameter(format!("negative mixture weight {w}")));
            }
            if rho.factorization != first.factorization {
                return Err(Error::Dimension("mixture of differently factorized states".into()));
            }
            acc = &acc + &rho.matrix.scale_real(*w);
        }
        Self::new(acc, first.factorization.clone())
    }

    pub fn maximally_mixed(factorization: Factorization) -> Self {
        let d = factorization.total_dim();
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            factorization,
        }
    }

    /// Product state `ρ_0 ⊗ ρ_1 ⊗ …`.
    pub fn product(factors: &[&DensityMatrix]) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
        let mut m = first.matrix.clone();
        let mut f = first.factorization.clone();
        for rho in &factors[1..] {
            m = linalg::kron(&m, &rho.matrix);
            f = f.concat(&rho.factorization);
        }
        Self::new(m, f)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn parties(&self) -> usize {
        self.factorization.parties()
    }

    /// Reduced state of a single party.
    pub fn marginal(&self, party: usize) -> Result<DensityMatrix> {
        let m = linalg::partial_trace(&self.matrix, &self.factorization, &[party])?;
        let d = self.factorization.dims()[party];
        Ok(Self {
            matrix: m,
            factorization: Factorization::new(vec![d])?,
        })
    }

    /// Real part of `Tr(ρ X)`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        Ok(self.matrix.trace_product(op)?.re)
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        let m = &u.matmul(&self.matrix)? * &u.adjoint();
        Self::new(m, self.factorization.clone())
    }

    fn require_two_qubits(&self) -> Result<()> {
        if self.factorization.dims() != [2, 2] {
            return Err(Error::Dimension(format!(
                "expected a two-qubit state, got factorization {:?}",
                self.factorization.dims()
            )));
        }
        Ok(())
    }
}

/// Real Bloch vector of a qubit, `ρ = (I + r·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn norm(&self) -> f64 {
        dot(self.0, self.0).sqrt()
    }

    pub fn dot(&self, n: [f64; 3]) -> f64 {
        dot(self.0, n)
    }
}

/// Pauli–Pauli expectation table `T_ij = Tr(ρ σ_i ⊗ σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub [[f64; 3]; 3]);

impl CorrelationMatrix {
    /// `uᵀ T v`.
    pub fn bilinear(&self, u: [f64; 3], v: [f64; 3]) -> f64 {
        let t = &self.0;
        (0..3)
            .map(|i| u[i] * (t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2]))
            .sum()
    }

    /// `T v`.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let t = &self.0;
        [dot(t[0], v), dot(t[1], v), dot(t[2], v)]
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let rows: Vec<&[f64]> = self.0.iter().map(|r| r.as_slice()).collect();
        ComplexMatrix::from_real_rows(&rows)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        linalg::singular_values(&self.to_matrix())
    }
}

/// Outcome of the Horodecki CHSH criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorodeckiResult {
    pub s1: f64,
    pub s2: f64,
    /// `√(s1² + s2²)`.
    pub m_value: f64,
    pub admits_lhv: bool,
}

impl HorodeckiResult {
    /// Settings-optimized CHSH value `2√(s1² + s2²)`.
    pub fn chsh_max(&self) -> f64 {
        2.0 * self.m_value
    }
}

/// Single-party marginals and the correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    pub r_a: BlochVector,
    pub r_b: BlochVector,
    pub t: CorrelationMatrix,
}

/// A dichotomic ±1 qubit observable `n·σ` with `‖n‖ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitObservable {
    direction: [f64; 3],
}

impl QubitObservable {
    pub fn new(direction: [f64; 3]) -> Result<Self> {
        let n = dot(direction, direction).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "observable direction has norm {n}, expected 1"
            )));
        }
        Ok(Self { direction })
    }

    /// Normalizes `v`; fails on the zero vector.
    pub fn along(v: [f64; 3]) -> Result<Self> {
        let n = dot(v, v).sqrt();
        if n < 1e-300 {
            return Err(Error::InvalidParameter("zero observable direction".into()));
        }
        Ok(Self {
            direction: [v[0] / n, v[1] / n, v[2] / n],
        })
    }

    /// Direction `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            direction: [st * cp, st * sp, ct],
        }
    }

    pub fn sigma_x() -> Self {
        Self { direction: [1.0, 0.0, 0.0] }
    }

    pub fn sigma_y() -> Self {
        Self { direction: [0.0, 1.0, 0.0] }
    }

    pub fn sigma_z() -> Self {
        Self { direction: [0.0, 0.0, 1.0] }
    }

    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    pub fn matrix(&self) -> ComplexMatrix {
        pauli::dot(self.direction)
    }
}

/// The state families used throughout the sweeps. Angles are in radians.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFamily {
    /// `(|01⟩ − |10⟩)/√2`.
    Singlet,
    /// `p |ψ⁻⟩⟨ψ⁻| + (1 − p) I/4`.
    Werner { p: f64 },
    /// `0.85 P_φ + 0.15 P_01` with `|φ⟩ = (2|00⟩ + |11⟩)/√5`.
    Sigma,
    /// `λ P_θ + (1 − λ) P_01` with `|θ⟩ = cos θ |00⟩ + sin θ |11⟩`.
    Cg { theta: f64, lambda: f64 },
    /// `cos θ |00⟩ + e^{iβ} sin θ |10⟩`.
    Classical { theta: f64, beta: f64 },
    /// `(1 − p) |ψ⁺⟩⟨ψ⁺| + p |00⟩⟨00|`.
    Transition { p: f64 },
    /// `(|000⟩ + |111⟩)/√2`.
    Ghz,
    /// Tensor product of single-qubit kets (normalized on construction).
    PureProduct(Vec<[Complex64; 2]>),
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name} = {x} is outside [0, 1]")));
    }
    Ok(())
}

fn check_finite(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("{name} = {x} is not finite")));
    }
    Ok(())
}

fn basis_ket(index: usize, dim: usize) -> Vec<Complex64> {
    let mut v = vec![C0; dim];
    v[index] = c(1.0);
    v
}

fn pure2(ket: &[Complex64]) -> Result<DensityMatrix> {
    DensityMatrix::pure(ket, Factorization::qubits(2))
}

fn singlet_ket() -> Vec<Complex64> {
    vec![C0, c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), C0]
}

/// Builds a member of a state family.
pub fn make_state(family: &StateFamily) -> Result<DensityMatrix> {
    match family {
        StateFamily::Singlet => pure2(&singlet_ket()),
        StateFamily::Werner { p } => {
            check_unit_interval("p", *p)?;
            let singlet = pure2(&singlet_ket())?;
            let basis: Vec<DensityMatrix> = (0..4)
                .map(|i| pure2(&basis_ket(i, 4)))
                .collect::<Result<_>>()?;
            let mut parts = vec![(*p, &singlet)];
            parts.extend(basis.iter().map(|b| ((1.0 - p) / 4.0, b)));
            DensityMatrix::mixture(&parts)
        }
        StateFamily::Sigma => {
            let s5 = 5f64.sqrt();
            let phi = pure2(&[c(2.0 / s5), C0, C0, c(1.0 / s5)])?;
            let p01 = pure2(&basis_ket(1, 4))?;
            DensityMatrix::mixture(&[(0.85, &phi), (0.15, &p01)])
        }
        StateFamily::Cg { theta, lambda } => {
            check_finite("theta", *theta)?;
            check_unit_interval("lambda", *lambda)?;
            let (s, co) = theta.sin_cos();
            let th = pure2(&[c(co), C0, C0, c(s)])?;
            let p01 = pure2(&basis_ket(1, 4))?;
            DensityMatrix::mixture(&[(*lambda, &th), (1.0 - lambda, &p01)])
        }
        StateFamily::Classical { theta, beta } => {
            check_finite("theta", *theta)?;
            check_finite("beta", *beta)?;
            let (s, co) = theta.sin_cos();
            // |10⟩ has composite index 2
            pure2(&[c(co), C0, Complex64::from_polar(s, *beta), C0])
        }
        StateFamily::Transition { p } => {
            check_unit_interval("p", *p)?;
            let psi_plus = pure2(&[C0, c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), C0])?;
            let p00 = pure2(&basis_ket(0, 4))?;
            DensityMatrix::mixture(&[(1.0 - p, &psi_plus), (*p, &p00)])
        }
        StateFamily::Ghz => {
            let mut ket = vec![C0; 8];
            ket[0] = c(FRAC_1_SQRT_2);
            ket[7] = c(FRAC_1_SQRT_2);
            DensityMatrix::pure(&ket, Factorization::qubits(3))
        }
        StateFamily::PureProduct(kets) => {
            if kets.is_empty() {
                return Err(Error::InvalidParameter("product of zero qubits".into()));
            }
            let mut ket = vec![c(1.0)];
            for q in kets {
                let n = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
                if n < 1e-300 || !n.is_finite() {
                    return Err(Error::InvalidParameter("zero single-qubit ket".into()));
                }
                ket = linalg::kron_vec(&ket, &[q[0] / n, q[1] / n]);
            }
            DensityMatrix::pure(&ket, Factorization::qubits(kets.len()))
        }
    }
}

/// Top-two singular value sum of squares, `s1² + s2²`, of a correlation matrix.
fn horodecki_m_squared(t: &CorrelationMatrix) -> f64 {
    let s = t.singular_values();
    s[0] * s[0] + s[1] * s[1]
}

/// The `λ ∈ (0, 1)` at which `cg(θ, λ)` sits exactly on the CHSH local bound.
///
/// Bisection on `s1² + s2² − 1` over `[1/2, 1]`. With `T = diag(λs, −λs, 2λ−1)`,
/// `s = sin 2θ`, the quantity is negative on `(0, 1/2]` and every singular value
/// grows with `λ` above `1/2`, so the root in `(0, 1)` is unique when it exists.
pub fn cg_lambda(theta: f64) -> Result<f64> {
    check_finite("theta", theta)?;
    let m = |lambda: f64| -> Result<f64> {
        let rho = make_state(&StateFamily::Cg { theta, lambda })?;
        Ok(horodecki_m_squared(&correlation_matrix(&rho)?) - 1.0)
    };
    let (mut lo, mut hi) = (0.5, 1.0);
    let (f_lo, f_hi) = (m(lo)?, m(hi)?);
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoRoot(format!(
            "CHSH never reaches its local bound for cg(theta = {theta}, lambda) with lambda in (0, 1)"
        )));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if m(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `r_i = Tr(ρ σ_i)` for a single-qubit state.
pub fn bloch_vector(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.factorization().dims() != [2] {
        return Err(Error::Dimension(format!(
            "Bloch vector needs a single qubit, got factorization {:?}",
            rho.factorization().dims()
        )));
    }
    let [x, y, z] = pauli::xyz();
    Ok(BlochVector([
        rho.expectation(&x)?,
        rho.expectation(&y)?,
        rho.expectation(&z)?,
    ]))
}

/// Bloch vector of one party's marginal.
pub fn marginal_bloch(rho: &DensityMatrix, party: usize) -> Result<BlochVector> {
    if party >= rho.parties() {
        return Err(Error::Dimension(format!(
            "party {party} out of range for {} parties",
            rho.parties()
        )));
    }
    bloch_vector(&rho.marginal(party)?)
}

/// `T_ij = Tr(ρ σ_i ⊗ σ_j)` for a two-qubit state.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix> {
    rho.require_two_qubits()?;
    let paulis = pauli::xyz();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = rho.expectation(&linalg::kron(si, sj))?;
        }
    }
    Ok(CorrelationMatrix(t))
}

/// Marginal Bloch vectors and correlation matrix in one pass.
pub fn bloch_decomposition(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    rho.require_two_qubits()?;
    Ok(BlochDecomposition {
        r_a: marginal_bloch(rho, 0)?,
        r_b: marginal_bloch(rho, 1)?,
        t: correlation_matrix(rho)?,
    })
}

/// Horodecki criterion: `√(s1² + s2²) ≤ 1` admits an LHV model for CHSH.
pub fn horodecki(rho: &DensityMatrix) -> Result<HorodeckiResult> {
    let t = correlation_matrix(rho)?;
    let s = t.singular_values();
    let m_value = (s[0] * s[0] + s[1] * s[1]).sqrt();
    Ok(HorodeckiResult {
        s1: s[0],
        s2: s[1],
        m_value,
        admits_lhv: m_value <= 1.0 + BLOCH_TOL,
    })
}

pub(crate) fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}
