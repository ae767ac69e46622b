//! The local perception operator map and perceived statistics.
//!
//! For a state `ρ` on parties `0..n` and a global operator `X`, the LPO kept on
//! party `J` is
//!
//! ```text
//! (X)^J_ρ = Tr_J̄[(ρ_0 ⊗ … ⊗ I_J ⊗ … ⊗ ρ_{n−1}) X]
//! ```
//!
//! where every complement factor is that party's own single-site marginal. For two
//! parties this is the usual `Tr_B[(I ⊗ ρ_B) X]`.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, HERMITIAN_TOL};
use crate::states::{DensityMatrix, QubitObservable};

/// `(X)^J_ρ` together with the party it lives on.
#[derive(Debug, Clone)]
pub struct LocalPerceivedOperator<'a> {
    pub matrix: ComplexMatrix,
    pub kept: usize,
    pub source_state: &'a DensityMatrix,
}

impl LocalPerceivedOperator<'_> {
    /// `Tr[ρ_J (X)^J_ρ]`.
    pub fn expectation(&self) -> Result<f64> {
        self.source_state.marginal(self.kept)?.expectation(&self.matrix)
    }
}

/// Projects a global operator onto one party.
pub fn lpo_project<'a>(
    x: &ComplexMatrix,
    rho: &'a DensityMatrix,
    keep: usize,
) -> Result<LocalPerceivedOperator<'a>> {
    let f = rho.factorization();
    if !x.is_square() || x.rows() != rho.dim() {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but the state lives in dimension {}",
            x.rows(),
            x.cols(),
            rho.dim()
        )));
    }
    if keep >= f.parties() {
        return Err(Error::Dimension(format!(
            "party {keep} out of range for {} parties",
            f.parties()
        )));
    }
    let factors: Vec<ComplexMatrix> = (0..f.parties())
        .map(|k| {
            if k == keep {
                Ok(ComplexMatrix::identity(f.dims()[k]))
            } else {
                Ok(rho.marginal(k)?.matrix().clone())
            }
        })
        .collect::<Result<_>>()?;
    let weight = linalg::kron_all(&factors);
    let matrix = linalg::partial_trace(&(&weight * x), f, &[keep])?;
    Ok(LocalPerceivedOperator {
        matrix,
        kept: keep,
        source_state: rho,
    })
}

/// `Tr[ρ_J (X)^J_ρ]`, which equals `Tr[(ρ_0 ⊗ ρ_1 ⊗ …) X]` for every choice of `J`.
pub fn perceived_expectation(x: &ComplexMatrix, rho: &DensityMatrix, side: usize) -> Result<f64> {
    let defect = x.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    lpo_project(x, rho, side)?.expectation()
}

/// Product of all single-party marginals, `ρ_0 ⊗ ρ_1 ⊗ …`.
pub fn product_of_marginals(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let marginals: Vec<DensityMatrix> = (0..rho.parties())
        .map(|k| rho.marginal(k))
        .collect::<Result<_>>()?;
    let refs: Vec<&DensityMatrix> = marginals.iter().collect();
    DensityMatrix::product(&refs)
}

/// Perceived correlator `C^LPO = a·b·C` for `A ⊗ B` on a two-qubit state.
pub fn lpo_correlator(a: &QubitObservable, b: &QubitObservable, rho: &DensityMatrix) -> Result<f64> {
    Ok(lpo_correlator_parts(a, b, rho)?.product_formula)
}

/// Both routes to the perceived correlator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerceivedCorrelator {
    /// `a_i b_j C_ij` from the three expectation values.
    pub product_formula: f64,
    /// `Tr[ρ (X)^A_ρ ⊗ (X)^B_ρ]` with `X = A ⊗ B`, from explicit LPO matrices.
    pub operator_form: f64,
}

pub fn lpo_correlator_parts(
    a: &QubitObservable,
    b: &QubitObservable,
    rho: &DensityMatrix,
) -> Result<PerceivedCorrelator> {
    if rho.factorization().dims() != [2, 2] {
        return Err(Error::Dimension("perceived correlator needs a two-qubit state".into()));
    }
    let (am, bm) = (a.matrix(), b.matrix());
    let x = linalg::kron(&am, &bm);
    let mean_a = rho.marginal(0)?.expectation(&am)?;
    let mean_b = rho.marginal(1)?.expectation(&bm)?;
    let corr = rho.expectation(&x)?;
    let on_a = lpo_project(&x, rho, 0)?;
    let on_b = lpo_project(&x, rho, 1)?;
    let operator_form = rho.expectation(&linalg::kron(&on_a.matrix, &on_b.matrix))?;
    Ok(PerceivedCorrelator {
        product_formula: mean_a * mean_b * corr,
        operator_form,
    })
}
