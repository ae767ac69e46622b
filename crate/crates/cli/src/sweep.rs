//! Parameter sweeps over a state family, written as CSV.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lpow_core::optimize::{derive_seed, OptimizerConfig};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::quantity::{Quantity, Value};
use crate::state::StateSpec;

/// `start:stop:count`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(CliError::usage("grid ends must be finite"));
        }
        if !(start < stop) {
            return Err(CliError::usage(format!("grid start {start} must be below stop {stop}")));
        }
        if count < 2 {
            return Err(CliError::usage(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Self { start, stop, count })
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [a, b, n] = parts[..] else {
            return Err(CliError::usage(format!("grid must look like start:stop:count, got `{s}`")));
        };
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad grid number `{x}`")))
        };
        let count = n
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("bad grid count `{n}`")))?;
        Grid::new(num(a)?, num(b)?, count)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub param: String,
    pub grid: Grid,
    pub quantities: Vec<Quantity>,
    pub optimizer: OptimizerConfig,
    pub output: PathBuf,
    /// Adds a `<quantity>:<bound>` column for every bound a quantity reports.
    pub with_bounds: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.quantities.is_empty() {
            return Err(CliError::usage("no quantities given"));
        }
        self.state.with_param(&self.param, self.grid.start)?;
        self.optimizer.validate()?;
        Ok(())
    }
}

/// One grid point: the parameter value and one entry per quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub param: f64,
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub quantities: Vec<Quantity>,
    pub rows: Vec<Row>,
    pub warnings: Vec<String>,
}

impl SweepTable {
    pub fn column(&self, q: Quantity) -> Option<Vec<f64>> {
        let k = self.quantities.iter().position(|&x| x == q)?;
        Some(self.rows.iter().map(|r| r.values[k].value).collect())
    }

    pub fn params(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.param).collect()
    }

    /// Bound names per quantity, in first-seen order across rows.
    fn bound_columns(&self) -> Vec<(usize, String)> {
        let mut cols = Vec::new();
        for (k, _) in self.quantities.iter().enumerate() {
            for row in &self.rows {
                for (name, _) in &row.values[k].bounds {
                    if !cols.iter().any(|(j, n)| *j == k && n == name) {
                        cols.push((k, name.clone()));
                    }
                }
            }
        }
        cols
    }

    pub fn to_csv(&self, with_bounds: bool) -> Result<String> {
        let extra = if with_bounds { self.bound_columns() } else { Vec::new() };
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut header = vec!["param".to_string()];
        header.extend(self.quantities.iter().map(|q| q.name().to_string()));
        header.extend(extra.iter().map(|(k, n)| format!("{}:{n}", self.quantities[*k])));
        w.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let mut rec = vec![fmt_f64(row.param)];
            rec.extend(row.values.iter().map(|v| fmt_f64(v.value)));
            for (k, name) in &extra {
                let b = row.values[*k]
                    .bounds
                    .iter()
                    .find(|(n, _)| n == name)
                    .map_or(f64::NAN, |(_, b)| *b);
                rec.push(fmt_f64(b));
            }
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("ascii csv"))
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::usage(format!("csv: {e}"))
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:?}")
    }
}

fn nan_value() -> Value {
    Value {
        value: f64::NAN,
        bounds: Vec::new(),
        converged: false,
    }
}

/// Evaluates every grid point; grid points run in parallel with seeds derived from the index.
pub fn run(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let results: Vec<(Row, Vec<String>)> = (0..spec.grid.count)
        .into_par_iter()
        .map(|i| {
            let x = spec.grid.point(i);
            let cfg = spec.optimizer.with_seed(derive_seed(spec.optimizer.seed, i as u64));
            let mut warnings = Vec::new();
            let state = spec.state.with_param(&spec.param, x).and_then(|s| s.build());
            let values = spec
                .quantities
                .iter()
                .map(|q| {
                    let rho = match &state {
                        Ok(rho) => rho,
                        Err(e) => {
                            warnings.push(format!("{}={x}: {q}: {e}", spec.param));
                            return nan_value();
                        }
                    };
                    match q.evaluate(rho, &cfg) {
                        Ok(v) if v.converged => v,
                        Ok(_) => {
                            warnings.push(format!("{}={x}: {q}: optimizer did not converge", spec.param));
                            nan_value()
                        }
                        Err(e) => {
                            warnings.push(format!("{}={x}: {q}: {e}", spec.param));
                            nan_value()
                        }
                    }
                })
                .collect();
            (Row { param: x, values }, warnings)
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut warnings = Vec::new();
    for (row, w) in results {
        rows.push(row);
        warnings.extend(w);
    }
    Ok(SweepTable {
        quantities: spec.quantities.clone(),
        rows,
        warnings,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))
}

/// Runs a sweep, writes its CSV and prints warnings to standard error.
pub fn run_to_file(spec: &SweepSpec) -> Result<SweepTable> {
    let table = run(spec)?;
    let csv = table.to_csv(spec.with_bounds)?;
    write_file(&spec.output, &csv)?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    Ok(table)
}

/// Linear interpolation of the first upward crossing of `level`.
pub fn first_crossing(xs: &[f64], ys: &[f64], level: f64) -> Option<f64> {
    xs.windows(2).zip(ys.windows(2)).find_map(|(x, y)| {
        if y[0] <= level && y[1] > level {
            Some(x[0] + (level - y[0]) * (x[1] - x[0]) / (y[1] - y[0]))
        } else {
            None
        }
    })
}
