//! Registered scalar quantities and their evaluation on a state.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use lpow_core::bell::{self, BellFunctional, NormalizedKind};
use lpow_core::optimize::OptimizerConfig;
use lpow_core::states::{self, DensityMatrix};
use lpow_core::witness::{self, MerminMode, MerminSettings, SettingsConstraint};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Settings-optimized CHSH value.
    SChsh,
    /// Free-settings symmetric LPO witness of CHSH.
    SChshLpo,
    /// Settings-optimized C3322 divided by 4 (local bound 1).
    I3322Tilde,
    /// Settings-optimized C3322 (local bound 4).
    C3322,
    /// Normalized CH form of CHSH (local bound 1).
    I2222Tilde,
    /// Normalized CH form on perceived correlators at the symmetric-witness optimum.
    I2222LpoTilde,
    HorodeckiM,
    BlochNormA,
    BlochNormB,
    /// Mermin value with `σx`, `σy` settings.
    Mermin,
    /// Asymmetric LPO witness of the Mermin functional.
    MerminLpo,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Self::SChsh,
        Self::SChshLpo,
        Self::I3322Tilde,
        Self::C3322,
        Self::I2222Tilde,
        Self::I2222LpoTilde,
        Self::HorodeckiM,
        Self::BlochNormA,
        Self::BlochNormB,
        Self::Mermin,
        Self::MerminLpo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SChsh => "s_chsh",
            Self::SChshLpo => "s_chsh_lpo",
            Self::I3322Tilde => "i3322_tilde",
            Self::C3322 => "c3322",
            Self::I2222Tilde => "i2222_tilde",
            Self::I2222LpoTilde => "i2222_lpo_tilde",
            Self::HorodeckiM => "horodecki_m",
            Self::BlochNormA => "bloch_norm_a",
            Self::BlochNormB => "bloch_norm_b",
            Self::Mermin => "mermin",
            Self::MerminLpo => "mermin_lpo",
        }
    }

    /// Parses a comma-separated list.
    pub fn parse_list(s: &str) -> Result<Vec<Quantity>> {
        let list: Vec<Quantity> = s
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        if list.is_empty() {
            return Err(CliError::usage("no quantities given"));
        }
        Ok(list)
    }

    pub fn evaluate(self, rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Value> {
        let two_qubit = || -> Result<()> {
            if rho.factorization().dims() != [2, 2] {
                return Err(CliError::usage(format!("`{}` needs a two-qubit state", self.name())));
            }
            Ok(())
        };
        let three_qubit = || -> Result<()> {
            if rho.factorization().dims() != [2, 2, 2] {
                return Err(CliError::usage(format!("`{}` needs a three-qubit state", self.name())));
            }
            Ok(())
        };
        let chsh = BellFunctional::chsh();
        Ok(match self {
            Self::SChsh => {
                two_qubit()?;
                Value::exact(witness::chsh_sup_horodecki(rho)?).bounded("tsirelson", 2.0 * SQRT_2)
            }
            Self::SChshLpo => {
                two_qubit()?;
                Value::from_report(witness::sym_sup(rho, &chsh, SettingsConstraint::Free, cfg)?)
            }
            Self::C3322 | Self::I3322Tilde => {
                two_qubit()?;
                let rep = witness::bell_sup_numeric(rho, &BellFunctional::c3322(), cfg)?;
                let scale = if self == Self::C3322 { 1.0 } else { 0.25 };
                Value {
                    value: rep.value * scale,
                    bounds: Vec::new(),
                    converged: rep.converged,
                }
            }
            Self::I2222Tilde => {
                two_qubit()?;
                let s = witness::chsh_sup_horodecki(rho)?;
                let v = bell::normalized_value(NormalizedKind::I2222Tilde, s / 4.0 - 0.5);
                Value::exact(v).bounded("tsirelson", SQRT_2)
            }
            Self::I2222LpoTilde => {
                two_qubit()?;
                let rep = witness::sym_sup(rho, &chsh, SettingsConstraint::Free, cfg)?;
                let raw = match &rep.optimizing_scenario {
                    Some(s) => bell::i2222_lpo_from_means(&bell::marginal_means(rho, s)?)?,
                    None => -0.5,
                };
                let bounds = rep
                    .bounds
                    .iter()
                    .map(|(n, b)| (n.clone(), b / 2.0))
                    .collect();
                Value {
                    value: bell::normalized_value(NormalizedKind::I2222LpoTilde, raw),
                    bounds,
                    converged: rep.converged,
                }
            }
            Self::HorodeckiM => {
                two_qubit()?;
                Value::exact(states::horodecki(rho)?.m_value)
            }
            Self::BlochNormA => Value::exact(states::marginal_bloch(rho, 0)?.norm()),
            Self::BlochNormB => Value::exact(states::marginal_bloch(rho, 1)?.norm()),
            Self::Mermin => {
                three_qubit()?;
                Value::exact(witness::mermin_value(rho, &MerminSettings::default())?).bounded("quantum", 4.0)
            }
            Self::MerminLpo => {
                three_qubit()?;
                Value::from_report(witness::mermin_lpo_witness(rho, &MerminMode::AsymSup)?)
            }
        })
    }
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|q| q.name() == s.trim()).ok_or_else(|| {
            let known: Vec<&str> = Self::ALL.iter().map(|q| q.name()).collect();
            CliError::usage(format!("unknown quantity `{s}` (known: {})", known.join(", ")))
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed quantity with its applicable upper bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Value {
    pub value: f64,
    pub bounds: Vec<(String, f64)>,
    pub converged: bool,
}

impl Value {
    fn exact(value: f64) -> Self {
        Self {
            value,
            bounds: Vec::new(),
            converged: true,
        }
    }

    fn bounded(mut self, name: &str, bound: f64) -> Self {
        self.bounds.push((name.to_string(), bound));
        self
    }

    fn from_report(rep: witness::WitnessReport) -> Self {
        Self {
            value: rep.value,
            bounds: rep.bounds,
            converged: rep.converged,
        }
    }
}
