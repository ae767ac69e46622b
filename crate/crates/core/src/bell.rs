//! Linear two-party Bell functionals.
//!
//! A functional is a coefficient triple `(α, β, γ)` defining
//!
//! ```text
//! 𝓑 = Σ α_xy A_x ⊗ B_y + Σ β_x A_x ⊗ I + Σ γ_y I ⊗ B_y
//! ```
//!
//! Its value on local means is the bilinear form `F(a, b) = aᵀαb + βᵀa + γᵀb`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, ComplexMatrix};
use crate::states::{self, BlochDecomposition, DensityMatrix, QubitObservable};

/// Largest `m + n` accepted by vertex enumeration.
pub const MAX_ENUMERATED_SETTINGS: usize = 24;

/// Slack on means and probabilities.
pub const MEAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BellFunctional {
    pub name: String,
    /// `m × n`, row per Alice setting.
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl BellFunctional {
    pub fn new(
        name: impl Into<String>,
        alpha: Vec<Vec<f64>>,
        beta: Vec<f64>,
        gamma: Vec<f64>,
    ) -> Result<Self> {
        let m = alpha.len();
        let n = alpha.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Dimension("a Bell functional needs m, n >= 1".into()));
        }
        if alpha.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension("alpha rows have different lengths".into()));
        }
        if beta.len() != m || gamma.len() != n {
            return Err(Error::Dimension(format!(
                "alpha is {m}x{n} but beta has {} and gamma {} entries",
                beta.len(),
                gamma.len()
            )));
        }
        let finite = alpha.iter().flatten().chain(&beta).chain(&gamma).all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        Ok(Self {
            name: name.into(),
            alpha,
            beta,
            gamma,
        })
    }

    pub fn chsh() -> Self {
        Self::new(
            "chsh",
            vec![vec![1.0, 1.0], vec![1.0, -1.0]],
            vec![0.0; 2],
            vec![0.0; 2],
        )
        .unwrap()
    }

    pub fn c3322() -> Self {
        Self::new(
            "c3322",
            vec![
                vec![1.0, 1.0, 1.0],
                vec![1.0, 1.0, -1.0],
                vec![1.0, -1.0, 0.0],
            ],
            vec![1.0, 1.0, 0.0],
            vec![-1.0, -1.0, 0.0],
        )
        .unwrap()
    }

    /// Alice's setting count.
    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    /// Bob's setting count.
    pub fn n(&self) -> usize {
        self.alpha[0].len()
    }

    pub fn alpha_matrix(&self) -> ComplexMatrix {
        let rows: Vec<&[f64]> = self.alpha.iter().map(Vec::as_slice).collect();
        ComplexMatrix::from_real_rows(&rows)
    }

    pub(crate) fn check_scenario(&self, s: &MeasurementScenario) -> Result<()> {
        if s.alice.len() != self.m() || s.bob.len() != self.n() {
            return Err(Error::Dimension(format!(
                "functional `{}` needs {}+{} settings, scenario has {}+{}",
                self.name,
                self.m(),
                self.n(),
                s.alice.len(),
                s.bob.len()
            )));
        }
        Ok(())
    }
}

/// Looks up a named preset: `chsh` or `c3322`.
pub fn preset_functional(name: &str) -> Result<BellFunctional> {
    match name.to_ascii_lowercase().as_str() {
        "chsh" => Ok(BellFunctional::chsh()),
        "c3322" => Ok(BellFunctional::c3322()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Ordered observables for each party.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScenario {
    pub alice: Vec<QubitObservable>,
    pub bob: Vec<QubitObservable>,
    pub orthogonal: bool,
}

impl MeasurementScenario {
    pub fn new(alice: Vec<QubitObservable>, bob: Vec<QubitObservable>, orthogonal: bool) -> Result<Self> {
        if orthogonal {
            for (party, list) in [("alice", &alice), ("bob", &bob)] {
                for i in 0..list.len() {
                    for j in (i + 1)..list.len() {
                        let d = states::dot(list[i].direction(), list[j].direction());
                        if d.abs() > 1e-10 {
                            return Err(Error::InvalidParameter(format!(
                                "{party} settings {i} and {j} are not orthogonal (overlap {d:.3e})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            alice,
            bob,
            orthogonal,
        })
    }

    /// `A = (σx, σz)`, `B = ((σx + σz)/√2, (σx − σz)/√2)`.
    pub fn chsh_standard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self {
            alice: vec![QubitObservable::sigma_x(), QubitObservable::sigma_z()],
            bob: vec![
                QubitObservable::new([h, 0.0, h]).unwrap(),
                QubitObservable::new([h, 0.0, -h]).unwrap(),
            ],
            orthogonal: false,
        }
    }

    /// Three settings per party in the x–z plane with `cos η = √(7/8)`, `cos ζ = √(2/3)`.
    ///
    /// The settings are written `O(first, 0)` with
    /// `O(φ, θ) = sin θ (cos φ σx + sin φ σy) + cos θ σz`. Taken literally every
    /// setting would collapse onto `σz` (C3322 = 3.4 on the σ-state); reading the
    /// first argument as the polar tilt from `z` towards `x` gives C3322 ≈ 4.0514,
    /// so that is the reading used here.
    pub fn tavakoli() -> Self {
        let eta = (7f64 / 8.0).sqrt().acos();
        let zeta = (2f64 / 3.0).sqrt().acos();
        let tilt = |polar: f64| tilted_observable(0.0, polar);
        Self {
            alice: vec![tilt(eta), tilt(-eta), tilt(-FRAC_PI_2)],
            bob: vec![tilt(-zeta), tilt(zeta), tilt(FRAC_PI_2)],
            orthogonal: false,
        }
    }

    pub fn alice_directions(&self) -> Vec<[f64; 3]> {
        self.alice.iter().map(QubitObservable::direction).collect()
    }

    pub fn bob_directions(&self) -> Vec<[f64; 3]> {
        self.bob.iter().map(QubitObservable::direction).collect()
    }
}

/// `O(φ, θ) = sin θ (cos φ σx + sin φ σy) + cos θ σz`.
pub fn tilted_observable(phi: f64, theta: f64) -> QubitObservable {
    QubitObservable::spherical(theta, phi)
}

/// Local means `a_x`, `b_y` and correlators `C_xy`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalMeans {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// `m × n`.
    pub c: Vec<Vec<f64>>,
}

impl MarginalMeans {
    pub fn check_ranges(&self) -> Result<()> {
        let all = self.a.iter().chain(&self.b).chain(self.c.iter().flatten());
        for &x in all {
            if x.abs() > 1.0 + MEAN_TOL {
                return Err(Error::OutOfRange(format!("mean {x} outside [-1, 1]")));
            }
        }
        Ok(())
    }
}

/// Assembles `𝓑` for concrete settings.
pub fn bell_operator_matrix(f: &BellFunctional, s: &MeasurementScenario) -> Result<ComplexMatrix> {
    f.check_scenario(s)?;
    let id = pauli::identity();
    let a: Vec<ComplexMatrix> = s.alice.iter().map(QubitObservable::matrix).collect();
    let b: Vec<ComplexMatrix> = s.bob.iter().map(QubitObservable::matrix).collect();
    let mut out = ComplexMatrix::zeros(4, 4);
    for (x, ax) in a.iter().enumerate() {
        for (y, by) in b.iter().enumerate() {
            if f.alpha[x][y] != 0.0 {
                out = &out + &linalg::kron(ax, by).scale_real(f.alpha[x][y]);
            }
        }
        if f.beta[x] != 0.0 {
            out = &out + &linalg::kron(ax, &id).scale_real(f.beta[x]);
        }
    }
    for (y, by) in b.iter().enumerate() {
        if f.gamma[y] != 0.0 {
            out = &out + &linalg::kron(&id, by).scale_real(f.gamma[y]);
        }
    }
    Ok(out)
}

/// `a_x = Tr(ρ_A A_x)`, `b_y = Tr(ρ_B B_y)`, `C_xy = Tr(ρ A_x ⊗ B_y)` by direct traces.
pub fn marginal_means(rho: &DensityMatrix, s: &MeasurementScenario) -> Result<MarginalMeans> {
    if rho.factorization().dims() != [2, 2] {
        return Err(Error::Dimension("marginal means need a two-qubit state".into()));
    }
    let (rho_a, rho_b) = (rho.marginal(0)?, rho.marginal(1)?);
    let am: Vec<ComplexMatrix> = s.alice.iter().map(QubitObservable::matrix).collect();
    let bm: Vec<ComplexMatrix> = s.bob.iter().map(QubitObservable::matrix).collect();
    let a = am.iter().map(|m| rho_a.expectation(m)).collect::<Result<_>>()?;
    let b = bm.iter().map(|m| rho_b.expectation(m)).collect::<Result<_>>()?;
    let c = am
        .iter()
        .map(|x| {
            bm.iter()
                .map(|y| rho.expectation(&linalg::kron(x, y)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(MarginalMeans { a, b, c })
}

/// Same tables from the Bloch decomposition: `a_x = r_A·â_x`, `C_xy = â_xᵀ T b̂_y`.
pub fn means_from_bloch(dec: &BlochDecomposition, alice: &[[f64; 3]], bob: &[[f64; 3]]) -> MarginalMeans {
    MarginalMeans {
        a: alice.iter().map(|&d| dec.r_a.dot(d)).collect(),
        b: bob.iter().map(|&d| dec.r_b.dot(d)).collect(),
        c: alice
            .iter()
            .map(|&u| bob.iter().map(|&v| dec.t.bilinear(u, v)).collect())
            .collect(),
    }
}

fn check_lengths(f: &BellFunctional, a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != f.m() || b.len() != f.n() {
        return Err(Error::Dimension(format!(
            "functional `{}` is {}x{}, means have lengths {} and {}",
            f.name,
            f.m(),
            f.n(),
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `F(a, b) = aᵀαb + βᵀa + γᵀb`.
pub fn bilinear_value(f: &BellFunctional, a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(f, a, b)?;
    Ok(bilinear_unchecked(f, a, b))
}

pub(crate) fn bilinear_unchecked(f: &BellFunctional, a: &[f64], b: &[f64]) -> f64 {
    let mut v = 0.0;
    for (x, ax) in a.iter().enumerate() {
        let row: f64 = f.alpha[x].iter().zip(b).map(|(al, by)| al * by).sum();
        v += ax * (row + f.beta[x]);
    }
    v + f.gamma.iter().zip(b).map(|(g, by)| g * by).sum::<f64>()
}

/// `Tr(ρ 𝓑) = Σ α_xy C_xy + Σ β_x a_x + Σ γ_y b_y`.
pub fn expectation_from_means(f: &BellFunctional, means: &MarginalMeans) -> Result<f64> {
    check_lengths(f, &means.a, &means.b)?;
    let corr: f64 = f
        .alpha
        .iter()
        .zip(&means.c)
        .flat_map(|(ar, cr)| ar.iter().zip(cr).map(|(al, c)| al * c))
        .sum();
    let marg_a: f64 = f.beta.iter().zip(&means.a).map(|(x, y)| x * y).sum();
    let marg_b: f64 = f.gamma.iter().zip(&means.b).map(|(x, y)| x * y).sum();
    Ok(corr + marg_a + marg_b)
}

/// Maximizer of `F` over the box vertices `{±scale_a}^m × {±scale_b}^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexMaximum {
    pub value: f64,
    /// Sign pattern of Alice's means (entries ±1).
    pub a_signs: Vec<f64>,
    pub b_signs: Vec<f64>,
}

/// Enumerates all sign vertices in lexicographic order (`−1 < +1`, Alice's first setting
/// most significant) and keeps the first strict maximum.
pub fn vertex_maximum(f: &BellFunctional, scale_a: f64, scale_b: f64) -> Result<VertexMaximum> {
    let (m, n) = (f.m(), f.n());
    let k = m + n;
    if k > MAX_ENUMERATED_SETTINGS {
        return Err(Error::TooLarge(k));
    }
    let mut a = vec![0.0; m];
    let mut b = vec![0.0; n];
    let mut best: Option<VertexMaximum> = None;
    for v in 0u64..(1u64 << k) {
        for (pos, slot) in a.iter_mut().chain(b.iter_mut()).enumerate() {
            let bit = (v >> (k - 1 - pos)) & 1;
            *slot = if bit == 1 { 1.0 } else { -1.0 };
        }
        let sa: Vec<f64> = a.iter().map(|s| s * scale_a).collect();
        let sb: Vec<f64> = b.iter().map(|s| s * scale_b).collect();
        let value = bilinear_unchecked(f, &sa, &sb);
        if best.as_ref().map_or(true, |bm| value > bm.value) {
            best = Some(VertexMaximum {
                value,
                a_signs: a.clone(),
                b_signs: b.clone(),
            });
        }
    }
    Ok(best.expect("at least one vertex"))
}

/// Deterministic local-hidden-variable bound: `max F` over `{±1}^{m+n}`.
pub fn lhv_bound(f: &BellFunctional) -> Result<f64> {
    Ok(vertex_maximum(f, 1.0, 1.0)?.value)
}

/// `P(a, b | A, B) = ¼(1 + (−1)^a C_AI + (−1)^b C_IB + (−1)^{a+b} C_AB)`.
///
/// The result may leave `[0, 1]` when the correlator triple is not jointly realizable;
/// check it with [`is_physical_probability`].
pub fn cond_joint_prob(a_out: u8, b_out: u8, c_ai: f64, c_ib: f64, c_ab: f64) -> Result<f64> {
    if a_out > 1 || b_out > 1 {
        return Err(Error::OutOfRange(format!("outcomes must be bits, got ({a_out}, {b_out})")));
    }
    for (name, x) in [("C_AI", c_ai), ("C_IB", c_ib), ("C_AB", c_ab)] {
        if !x.is_finite() || x.abs() > 1.0 + MEAN_TOL {
            return Err(Error::OutOfRange(format!("{name} = {x} outside [-1, 1]")));
        }
    }
    let sa = if a_out == 0 { 1.0 } else { -1.0 };
    let sb = if b_out == 0 { 1.0 } else { -1.0 };
    Ok(0.25 * (1.0 + sa * c_ai + sb * c_ib + sa * sb * c_ab))
}

pub fn is_physical_probability(p: f64) -> bool {
    (-MEAN_TOL..=1.0 + MEAN_TOL).contains(&p)
}

/// `P(0|A_x) = (1 + a_x)/2`.
fn single_prob(mean: f64) -> f64 {
    0.5 * (1.0 + mean)
}

fn check_3322(means: &MarginalMeans) -> Result<()> {
    if means.a.len() != 3 || means.b.len() != 3 {
        return Err(Error::Dimension(format!(
            "I3322 needs 3+3 settings, got {}+{}",
            means.a.len(),
            means.b.len()
        )));
    }
    Ok(())
}

fn check_2222(means: &MarginalMeans) -> Result<()> {
    if means.a.len() != 2 || means.b.len() != 2 {
        return Err(Error::Dimension(format!(
            "I2222 needs 2+2 settings, got {}+{}",
            means.a.len(),
            means.b.len()
        )));
    }
    Ok(())
}

/// Probability form of I3322 (local bound 0), with joint probabilities of the
/// `(0, 0)` outcome built from the given correlators.
pub fn i3322_from_means(means: &MarginalMeans) -> Result<f64> {
    check_3322(means)?;
    const SIGNS: [[f64; 3]; 3] = [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 0.0]];
    let mut total = 0.0;
    for x in 0..3 {
        for y in 0..3 {
            if SIGNS[x][y] != 0.0 {
                let p = cond_joint_prob(0, 0, means.a[x], means.b[y], means.c[x][y])?;
                total += SIGNS[x][y] * p;
            }
        }
    }
    Ok(total
        - single_prob(means.a[0])
        - 2.0 * single_prob(means.b[0])
        - single_prob(means.b[1]))
}

/// Correlator form of I3322 (local bound 4).
pub fn c3322_from_means(means: &MarginalMeans) -> Result<f64> {
    check_3322(means)?;
    let c = &means.c;
    Ok(c[0][0] + c[0][1] + c[0][2] + c[1][0] + c[1][1] - c[1][2] + c[2][0] - c[2][1]
        + means.a[0]
        + means.a[1]
        - means.b[0]
        - means.b[1])
}

/// CH form of CHSH in probabilities (local bound 0):
/// `P(A1B1) + P(A1B2) + P(A2B1) − P(A2B2) − P(A1) − P(B1)`.
pub fn i2222_from_means(means: &MarginalMeans) -> Result<f64> {
    check_2222(means)?;
    let p = |x: usize, y: usize| cond_joint_prob(0, 0, means.a[x], means.b[y], means.c[x][y]);
    Ok(p(0, 0)? + p(0, 1)? + p(1, 0)? - p(1, 1)? - single_prob(means.a[0]) - single_prob(means.b[0]))
}

/// CH form evaluated on perceived correlators `a_x b_y C_xy` in place of `C_xy`.
pub fn i2222_lpo_from_means(means: &MarginalMeans) -> Result<f64> {
    check_2222(means)?;
    let perceived = MarginalMeans {
        a: means.a.clone(),
        b: means.b.clone(),
        c: (0..2)
            .map(|x| (0..2).map(|y| means.a[x] * means.b[y] * means.c[x][y]).collect())
            .collect(),
    };
    i2222_from_means(&perceived)
}

pub fn i3322_probability_value(rho: &DensityMatrix, s: &MeasurementScenario) -> Result<f64> {
    i3322_from_means(&marginal_means(rho, s)?)
}

pub fn c3322_value(rho: &DensityMatrix, s: &MeasurementScenario) -> Result<f64> {
    c3322_from_means(&marginal_means(rho, s)?)
}

/// Normalizations that put the local bound of each inequality at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizedKind {
    /// `Ĩ3322 = I3322 + 1`.
    I3322Tilde,
    /// `Ĩ2222 = 2 I2222 + 1`.
    I2222Tilde,
    /// `Ĩ2222^LPO = 2 I2222^LPO + 1`.
    I2222LpoTilde,
}

pub fn normalized_value(kind: NormalizedKind, raw: f64) -> f64 {
    match kind {
        NormalizedKind::I3322Tilde => raw + 1.0,
        NormalizedKind::I2222Tilde | NormalizedKind::I2222LpoTilde => 2.0 * raw + 1.0,
    }
}
