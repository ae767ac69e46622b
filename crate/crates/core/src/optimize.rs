//! Seeded multi-start pattern search.
//!
//! Each restart draws a starting point uniformly in `[0, 2π)^dim` and runs a
//! Hooke–Jeeves search: poll `±step` along every coordinate, keeping moves that
//! improve the objective by more than `value_tolerance`, then extrapolate along the
//! resulting direction for as long as that keeps improving. The step halves after a
//! poll with no improvement, and a restart converges once it drops below
//! `step_tolerance`. One poll counts as one iteration.
//!
//! Restarts are independent and run in parallel; the result is the best restart,
//! ties going to the lowest restart index, so the outcome does not depend on
//! scheduling.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    /// Coordinate polls allowed per restart.
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub value_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 500,
            step_tolerance: 1e-9,
            value_tolerance: 1e-10,
            seed: 0x5EED_1F0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidParameter("restarts must be at least 1".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
        }
        if !(self.step_tolerance > 0.0) || !(self.value_tolerance > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

/// Mixes a base seed with an index (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub point: Vec<f64>,
    pub value: f64,
    /// At least one restart reached the step tolerance.
    pub converged: bool,
    pub restarts_used: usize,
}

struct Run {
    point: Vec<f64>,
    value: f64,
    converged: bool,
}

const INITIAL_STEP: f64 = 0.5;

/// Polls `±step` along each coordinate around `x`, keeping improvements in place.
fn explore<F: Fn(&[f64]) -> f64>(f: &F, x: &mut [f64], fx: &mut f64, step: f64, tol: f64) -> bool {
    let mut moved = false;
    for k in 0..x.len() {
        let old = x[k];
        for dir in [1.0, -1.0] {
            x[k] = old + dir * step;
            let trial = f(x);
            if trial > *fx + tol {
                *fx = trial;
                moved = true;
                break;
            }
            x[k] = old;
        }
    }
    moved
}

/// Hooke–Jeeves pattern search from `start`.
fn pattern_search<F: Fn(&[f64]) -> f64>(f: &F, start: Vec<f64>, cfg: &OptimizerConfig) -> Run {
    let tol = cfg.value_tolerance;
    let mut base = start;
    let mut f_base = f(&base);
    let mut step = INITIAL_STEP;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        let mut x = base.clone();
        let mut fx = f_base;
        iterations += 1;
        if !explore(f, &mut x, &mut fx, step, tol) {
            step *= 0.5;
            if step < cfg.step_tolerance {
                converged = true;
                break;
            }
            continue;
        }
        // Keep extrapolating along the last successful direction while it pays off.
        while iterations < cfg.max_iterations {
            let mut probe: Vec<f64> = x.iter().zip(&base).map(|(xi, bi)| 2.0 * xi - bi).collect();
            let mut f_probe = f(&probe);
            base = std::mem::replace(&mut x, Vec::new());
            f_base = fx;
            iterations += 1;
            explore(f, &mut probe, &mut f_probe, step, tol);
            if f_probe > f_base + tol {
                x = probe;
                fx = f_probe;
            } else {
                break;
            }
        }
    }
    Run {
        point: base,
        value: f_base,
        converged,
    }
}

/// Maximizes `f` over `dim` unconstrained angle coordinates.
pub fn maximize<F>(f: F, dim: usize, cfg: &OptimizerConfig) -> Result<Optimum>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    let runs: Vec<Run> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(r as u64);
            let start: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..TAU)).collect();
            pattern_search(&f, start, cfg)
        })
        .collect();
    let converged = runs.iter().any(|r| r.converged);
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value > best.value { r } else { best })
        .expect("at least one restart");
    Ok(Optimum {
        point: best.point,
        value: best.value,
        converged,
        restarts_used: cfg.restarts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_peak() {
        let f = |x: &[f64]| x[0].cos() + (x[1] - 1.0).cos();
        let opt = maximize(f, 2, &OptimizerConfig::default()).unwrap();
        assert!((opt.value - 2.0).abs() < 1e-9, "{}", opt.value);
        assert!(opt.converged);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let f = |x: &[f64]| (3.0 * x[0]).sin() * x[1].cos() + 0.1 * x[2].sin();
        let cfg = OptimizerConfig {
            restarts: 8,
            ..Default::default()
        };
        let a = maximize(f, 3, &cfg).unwrap();
        let b = maximize(f, 3, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_non_convergence() {
        let cfg = OptimizerConfig {
            restarts: 2,
            max_iterations: 3,
            ..Default::default()
        };
        let opt = maximize(|x: &[f64]| -(x[0] - 1.0).powi(2), 1, &cfg).unwrap();
        assert!(!opt.converged);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(maximize(|_: &[f64]| 0.0, 1, &cfg).is_err());
        let cfg = OptimizerConfig {
            step_tolerance: 0.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
