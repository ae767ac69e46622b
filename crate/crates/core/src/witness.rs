//! LPO witnesses of Bell functionals and their upper bounds.
//!
//! For a two-qubit state with local means `a_x`, `b_y` and correlators `C_xy`:
//!
//! ```text
//! asymmetric:  Tr[(ρ_A ⊗ ρ_B) 𝓑] = F(a, b)
//! symmetric:   Σ α_xy a_x b_y C_xy + Σ β_x a_x² + Σ γ_y b_y²
//! ```
//!
//! The `*_sup` functions maximize over measurement settings.

use crate::bell::{self, BellFunctional, MarginalMeans, MeasurementScenario};
use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix};
use crate::lpo;
use crate::optimize::{self, OptimizerConfig};
use crate::states::{self, BlochDecomposition, DensityMatrix, QubitObservable};

/// Marginal Bloch norms below this are treated as exactly zero.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Slack allowed between a reported value and its listed bounds.
pub const BOUND_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub value: f64,
    pub optimizing_scenario: Option<MeasurementScenario>,
    /// Named upper bounds that apply to `value`.
    pub bounds: Vec<(String, f64)>,
    pub restarts_used: usize,
    pub converged: bool,
}

impl WitnessReport {
    fn exact(value: f64, scenario: Option<MeasurementScenario>, bounds: Vec<(String, f64)>) -> Self {
        Self {
            value,
            optimizing_scenario: scenario,
            bounds,
            restarts_used: 0,
            converged: true,
        }
    }

    pub fn bound(&self, name: &str) -> Option<f64> {
        self.bounds.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// True when `value` sits below every listed bound up to `tol`.
    pub fn respects_bounds(&self, tol: f64) -> bool {
        self.bounds.iter().all(|(_, b)| self.value <= b + tol)
    }
}

/// Which measurement settings `sym_sup` ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SettingsConstraint {
    Free,
    /// Each party's settings are distinct axes of one orthonormal frame.
    Orthogonal,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.factorization().dims() != [2, 2] {
        return Err(Error::Dimension(format!(
            "expected a two-qubit state, got factorization {:?}",
            rho.factorization().dims()
        )));
    }
    Ok(())
}

/// `Tr[(ρ_A ⊗ ρ_B) 𝓑]` at fixed settings.
pub fn asym_value_fixed(rho: &DensityMatrix, f: &BellFunctional, s: &MeasurementScenario) -> Result<f64> {
    require_two_qubits(rho)?;
    let op = bell::bell_operator_matrix(f, s)?;
    lpo::product_of_marginals(rho)?.expectation(&op)
}

fn unit_or_z(v: [f64; 3]) -> [f64; 3] {
    let n = states::dot(v, v).sqrt();
    if n < DEGENERATE_NORM {
        [0.0, 0.0, 1.0]
    } else {
        [v[0] / n, v[1] / n, v[2] / n]
    }
}

fn scaled(d: [f64; 3], s: f64) -> [f64; 3] {
    [d[0] * s, d[1] * s, d[2] * s]
}

fn observables(dirs: &[[f64; 3]]) -> Vec<QubitObservable> {
    dirs.iter()
        .map(|&d| QubitObservable::along(d).expect("unit direction"))
        .collect()
}

/// Exact supremum of the asymmetric witness over free settings.
///
/// Each `a_x = r_A·â_x` ranges independently over `[−‖r_A‖, ‖r_A‖]`, so the supremum is
/// the vertex maximum of `F` on the scaled box. The reported settings are `±r̂_A`, `±r̂_B`.
pub fn asym_sup(rho: &DensityMatrix, f: &BellFunctional) -> Result<WitnessReport> {
    require_two_qubits(rho)?;
    let ra = states::marginal_bloch(rho, 0)?;
    let rb = states::marginal_bloch(rho, 1)?;
    let vm = bell::vertex_maximum(f, ra.norm(), rb.norm())?;
    let (ua, ub) = (unit_or_z(ra.0), unit_or_z(rb.0));
    let alice: Vec<[f64; 3]> = vm.a_signs.iter().map(|&s| scaled(ua, s)).collect();
    let bob: Vec<[f64; 3]> = vm.b_signs.iter().map(|&s| scaled(ub, s)).collect();
    let scenario = MeasurementScenario::new(observables(&alice), observables(&bob), false)?;
    let bounds = vec![("lhv".to_string(), bell::lhv_bound(f)?)];
    Ok(WitnessReport::exact(vm.value, Some(scenario), bounds))
}

fn spherical_dir(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

fn spherical_dirs(x: &[f64]) -> Vec<[f64; 3]> {
    x.chunks_exact(2).map(|p| spherical_dir(p[0], p[1])).collect()
}

/// Numeric maximization of the asymmetric witness over spherical setting angles.
pub fn asym_sup_numeric(rho: &DensityMatrix, f: &BellFunctional, cfg: &OptimizerConfig) -> Result<WitnessReport> {
    require_two_qubits(rho)?;
    let dec = states::bloch_decomposition(rho)?;
    let m = f.m();
    let objective = |x: &[f64]| {
        let dirs = spherical_dirs(x);
        let a: Vec<f64> = dirs[..m].iter().map(|&d| dec.r_a.dot(d)).collect();
        let b: Vec<f64> = dirs[m..].iter().map(|&d| dec.r_b.dot(d)).collect();
        bell::bilinear_unchecked(f, &a, &b)
    };
    let opt = optimize::maximize(objective, 2 * (m + f.n()), cfg)?;
    let dirs = spherical_dirs(&opt.point);
    let scenario = MeasurementScenario::new(observables(&dirs[..m]), observables(&dirs[m..]), false)?;
    Ok(WitnessReport {
        value: opt.value,
        optimizing_scenario: Some(scenario),
        bounds: vec![("lhv".to_string(), bell::lhv_bound(f)?)],
        restarts_used: opt.restarts_used,
        converged: opt.converged,
    })
}

/// `Σ α a_x b_y C_xy + Σ β a_x² + Σ γ b_y²` from mean tables.
pub fn sym_from_means(f: &BellFunctional, means: &MarginalMeans) -> f64 {
    let mut v = 0.0;
    for (x, ax) in means.a.iter().enumerate() {
        for (y, by) in means.b.iter().enumerate() {
            v += f.alpha[x][y] * ax * by * means.c[x][y];
        }
        v += f.beta[x] * ax * ax;
    }
    v + f.gamma.iter().zip(&means.b).map(|(g, b)| g * b * b).sum::<f64>()
}

/// The symmetric witness integrand at fixed settings.
pub fn sym_value_fixed(rho: &DensityMatrix, f: &BellFunctional, s: &MeasurementScenario) -> Result<f64> {
    f.check_scenario(s)?;
    Ok(sym_from_means(f, &bell::marginal_means(rho, s)?))
}

/// The symmetric witness from explicit LPO matrices.
///
/// Sums `Tr[ρ (X)^A_ρ ⊗ (X)^B_ρ]` over the terms `X` of `𝓑` (`A_x ⊗ B_y`, `A_x ⊗ I`,
/// `I ⊗ B_y`), each weighted by its coefficient.
pub fn sym_value_operator(rho: &DensityMatrix, f: &BellFunctional, s: &MeasurementScenario) -> Result<f64> {
    require_two_qubits(rho)?;
    f.check_scenario(s)?;
    let id = pauli::identity();
    let term = |x: &ComplexMatrix| -> Result<f64> {
        let on_a = lpo::lpo_project(x, rho, 0)?;
        let on_b = lpo::lpo_project(x, rho, 1)?;
        rho.expectation(&linalg::kron(&on_a.matrix, &on_b.matrix))
    };
    let am: Vec<ComplexMatrix> = s.alice.iter().map(QubitObservable::matrix).collect();
    let bm: Vec<ComplexMatrix> = s.bob.iter().map(QubitObservable::matrix).collect();
    let mut v = 0.0;
    for (x, ax) in am.iter().enumerate() {
        for (y, by) in bm.iter().enumerate() {
            if f.alpha[x][y] != 0.0 {
                v += f.alpha[x][y] * term(&linalg::kron(ax, by))?;
            }
        }
        if f.beta[x] != 0.0 {
            v += f.beta[x] * term(&linalg::kron(ax, &id))?;
        }
    }
    for (y, by) in bm.iter().enumerate() {
        if f.gamma[y] != 0.0 {
            v += f.gamma[y] * term(&linalg::kron(&id, by))?;
        }
    }
    Ok(v)
}

fn positive_sum(v: &[f64]) -> f64 {
    v.iter().map(|x| x.max(0.0)).sum()
}

fn positive_max(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc: f64, &x| acc.max(x))
}

fn norms(rho: &DensityMatrix) -> Result<(f64, f64)> {
    require_two_qubits(rho)?;
    Ok((states::marginal_bloch(rho, 0)?.norm(), states::marginal_bloch(rho, 1)?.norm()))
}

/// `‖r_A‖‖r_B‖ Σ|α_xy| + ‖r_A‖² Σ(β_x)₊ + ‖r_B‖² Σ(γ_y)₊`, valid for any settings.
pub fn bound_geometry_free(rho: &DensityMatrix, f: &BellFunctional) -> Result<f64> {
    let (na, nb) = norms(rho)?;
    let abs_alpha: f64 = f.alpha.iter().flatten().map(|x| x.abs()).sum();
    Ok(na * nb * abs_alpha + na * na * positive_sum(&f.beta) + nb * nb * positive_sum(&f.gamma))
}

/// Spectral norm of the entrywise absolute value of `α`.
pub fn abs_alpha_norm(f: &BellFunctional) -> f64 {
    let rows: Vec<Vec<f64>> = f
        .alpha
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).collect())
        .collect();
    let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
    linalg::spectral_norm(&ComplexMatrix::from_real_rows(&refs))
}

/// `‖|α|‖₂ ‖r_A‖‖r_B‖ + max(β)₊ ‖r_A‖² + max(γ)₊ ‖r_B‖²`, valid for orthogonal settings.
pub fn bound_orthogonal(rho: &DensityMatrix, f: &BellFunctional) -> Result<f64> {
    let (na, nb) = norms(rho)?;
    Ok(abs_alpha_norm(f) * na * nb + positive_max(&f.beta) * na * na + positive_max(&f.gamma) * nb * nb)
}

/// C3322 bounds on the symmetric witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C3322Bounds {
    /// `8‖r_A‖‖r_B‖ + 2‖r_A‖²`.
    pub free: f64,
    /// `(1 + √3)‖r_A‖‖r_B‖ + ‖r_A‖²`.
    pub orthogonal: f64,
}

pub fn bound_c3322(rho: &DensityMatrix) -> Result<C3322Bounds> {
    let (na, nb) = norms(rho)?;
    Ok(C3322Bounds {
        free: 8.0 * na * nb + 2.0 * na * na,
        orthogonal: (1.0 + 3f64.sqrt()) * na * nb + na * na,
    })
}

fn rotation_zyz(a: f64, b: f64, c: f64) -> [[f64; 3]; 3] {
    let (sa, ca) = a.sin_cos();
    let (sb, cb) = b.sin_cos();
    let (sc, cc) = c.sin_cos();
    [
        [ca * cb * cc - sa * sc, -ca * cb * sc - sa * cc, ca * sb],
        [sa * cb * cc + ca * sc, -sa * cb * sc + ca * cc, sa * sb],
        [-sb * cc, sb * sc, cb],
    ]
}

/// The first `k` columns of a ZYZ-rotated frame.
fn frame_dirs(angles: &[f64], k: usize) -> Vec<[f64; 3]> {
    let r = rotation_zyz(angles[0], angles[1], angles[2]);
    (0..k).map(|j| [r[0][j], r[1][j], r[2][j]]).collect()
}

fn all_vanish(na: f64, nb: f64, f: &BellFunctional) -> bool {
    let deg_a = na < DEGENERATE_NORM;
    let deg_b = nb < DEGENERATE_NORM;
    let alpha_gone = deg_a || deg_b || f.alpha.iter().flatten().all(|&x| x == 0.0);
    let beta_gone = deg_a || f.beta.iter().all(|&x| x == 0.0);
    let gamma_gone = deg_b || f.gamma.iter().all(|&x| x == 0.0);
    alpha_gone && beta_gone && gamma_gone
}

/// Maximizes the symmetric witness over settings.
///
/// Free settings use two spherical angles per direction; orthogonal settings use three
/// ZYZ Euler angles per party and take the leading axes of the rotated frame.
pub fn sym_sup(
    rho: &DensityMatrix,
    f: &BellFunctional,
    constraint: SettingsConstraint,
    cfg: &OptimizerConfig,
) -> Result<WitnessReport> {
    require_two_qubits(rho)?;
    let (m, n) = (f.m(), f.n());
    if constraint == SettingsConstraint::Orthogonal && (m > 3 || n > 3) {
        return Err(Error::Dimension(format!(
            "orthogonal settings allow at most 3 per party, functional is {m}x{n}"
        )));
    }
    let dec = states::bloch_decomposition(rho)?;
    let (na, nb) = (dec.r_a.norm(), dec.r_b.norm());
    let mut bounds = vec![("geometry_free".to_string(), bound_geometry_free(rho, f)?)];
    if constraint == SettingsConstraint::Orthogonal {
        bounds.push(("orthogonal".to_string(), bound_orthogonal(rho, f)?));
    }
    if all_vanish(na, nb, f) {
        return Ok(WitnessReport::exact(0.0, None, bounds));
    }
    let split = |x: &[f64]| -> (Vec<[f64; 3]>, Vec<[f64; 3]>) {
        match constraint {
            SettingsConstraint::Free => {
                let dirs = spherical_dirs(x);
                (dirs[..m].to_vec(), dirs[m..].to_vec())
            }
            SettingsConstraint::Orthogonal => (frame_dirs(&x[..3], m), frame_dirs(&x[3..], n)),
        }
    };
    let dim = match constraint {
        SettingsConstraint::Free => 2 * (m + n),
        SettingsConstraint::Orthogonal => 6,
    };
    let objective = |x: &[f64]| {
        let (alice, bob) = split(x);
        sym_from_means(f, &bell::means_from_bloch(&dec, &alice, &bob))
    };
    let opt = optimize::maximize(objective, dim, cfg)?;
    let (alice, bob) = split(&opt.point);
    let orthogonal = constraint == SettingsConstraint::Orthogonal;
    let scenario = MeasurementScenario::new(observables(&alice), observables(&bob), orthogonal)?;
    let report = WitnessReport {
        value: opt.value,
        optimizing_scenario: Some(scenario),
        bounds,
        restarts_used: opt.restarts_used,
        converged: opt.converged,
    };
    debug_assert!(report.respects_bounds(BOUND_TOL), "{report:?}");
    Ok(report)
}

/// Settings-optimized `Tr(ρ𝓑)`.
///
/// For fixed Bob settings `Tr(ρ𝓑) = Σ_x â_x·v_x + Σ_y γ_y r_B·b̂_y` with
/// `v_x = Σ_y α_xy T b̂_y + β_x r_A`, so Alice's best choice is `â_x = v_x/‖v_x‖` and only
/// Bob's angles are searched.
pub fn bell_sup_numeric(rho: &DensityMatrix, f: &BellFunctional, cfg: &OptimizerConfig) -> Result<WitnessReport> {
    require_two_qubits(rho)?;
    let dec = states::bloch_decomposition(rho)?;
    let opt = optimize::maximize(|x: &[f64]| best_alice(&dec, f, &spherical_dirs(x)).0, 2 * f.n(), cfg)?;
    let bob = spherical_dirs(&opt.point);
    let (_, alice) = best_alice(&dec, f, &bob);
    let scenario = MeasurementScenario::new(observables(&alice), observables(&bob), false)?;
    Ok(WitnessReport {
        value: opt.value,
        optimizing_scenario: Some(scenario),
        bounds: Vec::new(),
        restarts_used: opt.restarts_used,
        converged: opt.converged,
    })
}

fn best_alice(dec: &BlochDecomposition, f: &BellFunctional, bob: &[[f64; 3]]) -> (f64, Vec<[f64; 3]>) {
    let tb: Vec<[f64; 3]> = bob.iter().map(|&d| dec.t.apply(d)).collect();
    let mut value: f64 = f.gamma.iter().zip(bob).map(|(g, &d)| g * dec.r_b.dot(d)).sum();
    let mut alice = Vec::with_capacity(f.m());
    for x in 0..f.m() {
        let mut v = scaled(dec.r_a.0, f.beta[x]);
        for (y, t) in tb.iter().enumerate() {
            for k in 0..3 {
                v[k] += f.alpha[x][y] * t[k];
            }
        }
        value += states::dot(v, v).sqrt();
        alice.push(unit_or_z(v));
    }
    (value, alice)
}

/// Settings-optimized CHSH, `2√(s1² + s2²)`.
pub fn chsh_sup_horodecki(rho: &DensityMatrix) -> Result<f64> {
    Ok(states::horodecki(rho)?.chsh_max())
}

/// Two settings `X_J`, `Y_J` per party for the Mermin functional.
#[derive(Debug, Clone, PartialEq)]
pub struct MerminSettings {
    pub x: [QubitObservable; 3],
    pub y: [QubitObservable; 3],
}

impl Default for MerminSettings {
    /// `X = σx`, `Y = σy` on every party.
    fn default() -> Self {
        let (sx, sy) = (QubitObservable::sigma_x(), QubitObservable::sigma_y());
        Self {
            x: [sx; 3],
            y: [sy; 3],
        }
    }
}

/// Mermin terms as (sign, per-party choice) with `false = X`, `true = Y`.
const MERMIN_TERMS: [(f64, [bool; 3]); 4] = [
    (1.0, [false, false, false]),
    (-1.0, [false, true, true]),
    (-1.0, [true, false, true]),
    (-1.0, [true, true, false]),
];

pub const MERMIN_LHV_BOUND: f64 = 2.0;

fn require_three_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.factorization().dims() != [2, 2, 2] {
        return Err(Error::Dimension(format!(
            "expected a three-qubit state, got factorization {:?}",
            rho.factorization().dims()
        )));
    }
    Ok(())
}

fn mermin_pick(s: &MerminSettings, party: usize, y: bool) -> &QubitObservable {
    if y {
        &s.y[party]
    } else {
        &s.x[party]
    }
}

/// `Tr(ρ 𝓑_Mermin)` with `𝓑 = XXX − XYY − YXY − YYX`.
pub fn mermin_value(rho: &DensityMatrix, s: &MerminSettings) -> Result<f64> {
    require_three_qubits(rho)?;
    MERMIN_TERMS.iter().try_fold(0.0, |acc, (sign, pick)| {
        let mats: Vec<ComplexMatrix> = (0..3).map(|j| mermin_pick(s, j, pick[j]).matrix()).collect();
        Ok(acc + sign * rho.expectation(&linalg::kron_all(&mats))?)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum MerminMode {
    /// Supremum of the trilinear Mermin form over the per-party mean boxes.
    AsymSup,
    /// `Σ sign_k (a b c)_k C_k` at fixed settings.
    SymFixed(MerminSettings),
}

fn mermin_trilinear(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    MERMIN_TERMS
        .iter()
        .map(|(sign, p)| sign * a[p[0] as usize] * b[p[1] as usize] * c[p[2] as usize])
        .sum()
}

pub fn mermin_lpo_witness(rho: &DensityMatrix, mode: &MerminMode) -> Result<WitnessReport> {
    require_three_qubits(rho)?;
    let bounds = vec![("lhv".to_string(), MERMIN_LHV_BOUND)];
    let value = match mode {
        MerminMode::AsymSup => {
            let r: Vec<f64> = (0..3)
                .map(|j| Ok(states::bloch_vector(&rho.marginal(j)?)?.norm()))
                .collect::<Result<_>>()?;
            let mut best = f64::NEG_INFINITY;
            for v in 0u32..64 {
                let s = |bit: u32, j: usize| if (v >> (5 - bit)) & 1 == 1 { r[j] } else { -r[j] };
                let value = mermin_trilinear([s(0, 0), s(1, 0)], [s(2, 1), s(3, 1)], [s(4, 2), s(5, 2)]);
                best = best.max(value);
            }
            best
        }
        MerminMode::SymFixed(s) => {
            let marginals: Vec<DensityMatrix> = (0..3).map(|j| rho.marginal(j)).collect::<Result<_>>()?;
            let mut total = 0.0;
            for (sign, pick) in MERMIN_TERMS {
                let mats: Vec<ComplexMatrix> = (0..3).map(|j| mermin_pick(s, j, pick[j]).matrix()).collect();
                let mut means = 1.0;
                for (j, m) in mats.iter().enumerate() {
                    means *= marginals[j].expectation(m)?;
                }
                total += sign * means * rho.expectation(&linalg::kron_all(&mats))?;
            }
            total
        }
    };
    Ok(WitnessReport::exact(value, None, bounds))
}
