//! Reports, parameter sweeps and plots for LPO witnesses.
//!
//! The `lpow` binary is a thin wrapper over these modules.

pub mod config;
pub mod error;
pub mod plot;
pub mod quantity;
pub mod report;
pub mod state;
pub mod sweep;

pub use error::{CliError, Result};
pub use quantity::{Quantity, Value};
pub use state::StateSpec;
pub use sweep::{Grid, SweepSpec, SweepTable};
