//! Local perception operator (LPO) witnesses for bipartite and tripartite qubit states.
//!
//! * [`linalg`]: dense complex matrices, Kronecker products, partial traces, SVD.
//! * [`states`]: density matrices, named state families, Bloch descriptors and the
//!   Horodecki criterion.
//! * [`lpo`]: the LPO map `(X)^J_ρ = Tr_J̄[(I_J ⊗ ρ_J̄) X]` and perceived correlators.
//! * [`bell`]: linear Bell functionals, their operators, LHV bounds and the CHSH and
//!   I3322 probability forms.
//! * [`optimize`]: seeded multi-start pattern search over measurement angles.
//! * [`witness`]: LPO witnesses, their upper bounds and the Mermin variants.
//! * [`random`]: random states, unitaries, POVMs and measurement directions.

pub mod bell;
pub mod error;
pub mod linalg;
pub mod lpo;
pub mod optimize;
pub mod random;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use num_complex::Complex64;
