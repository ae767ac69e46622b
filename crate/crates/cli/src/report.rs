//! One-line-per-quantity reports for a single state.

use lpow_core::optimize::OptimizerConfig;

use crate::error::Result;
use crate::quantity::{Quantity, Value};
use crate::state::StateSpec;
use crate::sweep::fmt_f64;

pub fn evaluate(state: &StateSpec, quantities: &[Quantity], cfg: &OptimizerConfig) -> Result<Vec<(Quantity, Value)>> {
    cfg.validate()?;
    let rho = state.build()?;
    quantities
        .iter()
        .map(|&q| Ok((q, q.evaluate(&rho, cfg)?)))
        .collect()
}

/// `name  value=...  bounds=...  converged=...`
pub fn format_line(q: Quantity, v: &Value) -> String {
    let bounds = if v.bounds.is_empty() {
        "-".to_string()
    } else {
        v.bounds
            .iter()
            .map(|(n, b)| format!("{n}:{}", fmt_f64(*b)))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "{:<16} value={}  bounds={bounds}  converged={}",
        q.name(),
        fmt_f64(v.value),
        v.converged
    )
}

pub fn render(state: &StateSpec, quantities: &[Quantity], cfg: &OptimizerConfig) -> Result<String> {
    let mut out = String::new();
    for (q, v) in evaluate(state, quantities, cfg)? {
        out.push_str(&format_line(q, &v));
        out.push('\n');
    }
    Ok(out)
}
