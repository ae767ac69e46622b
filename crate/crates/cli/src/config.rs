//! Sweep definitions read from a TOML file, one `[section]` per sweep.
//!
//! ```toml
//! [werner]
//! state = "werner"
//! param = "p"
//! grid = "0:1:101"
//! quantities = "s_chsh,i3322_tilde,s_chsh_lpo"
//! out = "werner.csv"
//! seed = 7
//! restarts = 64
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use lpow_core::optimize::OptimizerConfig;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::quantity::Quantity;
use crate::sweep::SweepSpec;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Section {
    state: String,
    param: String,
    grid: String,
    quantities: Quantities,
    out: PathBuf,
    seed: Option<u64>,
    restarts: Option<usize>,
    max_iterations: Option<usize>,
    step_tolerance: Option<f64>,
    value_tolerance: Option<f64>,
    #[serde(default)]
    with_bounds: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Quantities {
    Joined(String),
    List(Vec<String>),
}

impl Quantities {
    fn parse(&self) -> Result<Vec<Quantity>> {
        match self {
            Self::Joined(s) => Quantity::parse_list(s),
            Self::List(v) => Quantity::parse_list(&v.join(",")),
        }
    }
}

/// Optimizer settings with the given overrides applied.
pub fn optimizer_config(
    seed: Option<u64>,
    restarts: Option<usize>,
    max_iterations: Option<usize>,
    step_tolerance: Option<f64>,
    value_tolerance: Option<f64>,
) -> OptimizerConfig {
    let d = OptimizerConfig::default();
    OptimizerConfig {
        seed: seed.unwrap_or(d.seed),
        restarts: restarts.unwrap_or(d.restarts),
        max_iterations: max_iterations.unwrap_or(d.max_iterations),
        step_tolerance: step_tolerance.unwrap_or(d.step_tolerance),
        value_tolerance: value_tolerance.unwrap_or(d.value_tolerance),
    }
}

/// Parses every section into a named sweep, sorted by section name.
pub fn parse(text: &str, origin: &Path) -> Result<Vec<(String, SweepSpec)>> {
    let bad = |message: String| CliError::Config {
        path: origin.to_path_buf(),
        message,
    };
    let sections: BTreeMap<String, Section> = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
    if sections.is_empty() {
        return Err(bad("no sweep sections".into()));
    }
    sections
        .into_iter()
        .map(|(name, s)| {
            let ctx = |e: CliError| bad(format!("[{name}] {e}"));
            let spec = SweepSpec {
                state: s.state.parse().map_err(ctx)?,
                param: s.param,
                grid: s.grid.parse().map_err(ctx)?,
                quantities: s.quantities.parse().map_err(ctx)?,
                optimizer: optimizer_config(
                    s.seed,
                    s.restarts,
                    s.max_iterations,
                    s.step_tolerance,
                    s.value_tolerance,
                ),
                output: s.out,
                with_bounds: s.with_bounds,
            };
            spec.validate().map_err(ctx)?;
            Ok((name, spec))
        })
        .collect()
}

pub fn load(path: &Path) -> Result<Vec<(String, SweepSpec)>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text, path)
}
