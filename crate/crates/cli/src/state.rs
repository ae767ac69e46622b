//! Textual state descriptions such as `werner:p=0.4` or `cg:theta=0.3`.

use std::fmt;
use std::str::FromStr;

use lpow_core::states::{self, make_state, DensityMatrix, StateFamily};
use lpow_core::Complex64;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Singlet,
    Werner,
    Sigma,
    Cg,
    Classical,
    Transition,
    Ghz,
    Product,
}

impl FamilyName {
    pub const ALL: [FamilyName; 8] = [
        Self::Singlet,
        Self::Werner,
        Self::Sigma,
        Self::Cg,
        Self::Classical,
        Self::Transition,
        Self::Ghz,
        Self::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Singlet => "singlet",
            Self::Werner => "werner",
            Self::Sigma => "sigma",
            Self::Cg => "cg",
            Self::Classical => "classical",
            Self::Transition => "transition",
            Self::Ghz => "ghz",
            Self::Product => "product",
        }
    }

    /// Numeric parameters the family accepts.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Self::Werner | Self::Transition => &["p"],
            Self::Cg => &["theta", "lambda"],
            Self::Classical => &["theta", "beta"],
            Self::Singlet | Self::Sigma | Self::Ghz | Self::Product => &[],
        }
    }
}

impl FromStr for FamilyName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == lower)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|f| f.as_str()).collect();
                CliError::usage(format!("unknown state family `{s}` (known: {})", known.join(", ")))
            })
    }
}

/// A family name with some of its parameters fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub family: FamilyName,
    pub params: Vec<(String, f64)>,
    /// Single-qubit kets for `product`, one character each.
    pub kets: Option<String>,
}

impl StateSpec {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// Returns a copy with `name` set to `value`.
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        if !self.family.params().contains(&name) {
            return Err(CliError::usage(format!(
                "family `{}` has no parameter `{name}`",
                self.family.as_str()
            )));
        }
        let mut out = self.clone();
        out.params.retain(|(k, _)| k != name);
        out.params.push((name.to_string(), value));
        Ok(out)
    }

    fn require(&self, name: &str) -> Result<f64> {
        self.get(name).ok_or_else(|| {
            CliError::usage(format!("family `{}` needs `{name}=...`", self.family.as_str()))
        })
    }

    /// Resolves to a concrete family; a `cg` state without `lambda` sits on the CHSH local bound.
    pub fn family(&self) -> Result<StateFamily> {
        Ok(match self.family {
            FamilyName::Singlet => StateFamily::Singlet,
            FamilyName::Sigma => StateFamily::Sigma,
            FamilyName::Ghz => StateFamily::Ghz,
            FamilyName::Werner => StateFamily::Werner { p: self.require("p")? },
            FamilyName::Transition => StateFamily::Transition { p: self.require("p")? },
            FamilyName::Classical => StateFamily::Classical {
                theta: self.require("theta")?,
                beta: self.require("beta")?,
            },
            FamilyName::Cg => {
                let theta = self.require("theta")?;
                let lambda = match self.get("lambda") {
                    Some(l) => l,
                    None => states::cg_lambda(theta)?,
                };
                StateFamily::Cg { theta, lambda }
            }
            FamilyName::Product => {
                let kets = self
                    .kets
                    .as_deref()
                    .ok_or_else(|| CliError::usage("family `product` needs `kets=...`"))?;
                StateFamily::PureProduct(kets.chars().map(ket).collect::<Result<_>>()?)
            }
        })
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        Ok(make_state(&self.family()?)?)
    }
}

fn ket(c: char) -> Result<[Complex64; 2]> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (re, im) = (|x: f64| Complex64::new(x, 0.0), |x: f64| Complex64::new(0.0, x));
    Ok(match c {
        '0' => [re(1.0), re(0.0)],
        '1' => [re(0.0), re(1.0)],
        '+' => [re(h), re(h)],
        '-' => [re(h), re(-h)],
        'r' => [re(h), im(h)],
        'l' => [re(h), im(-h)],
        other => {
            return Err(CliError::usage(format!(
                "unknown ket `{other}` (use 0, 1, +, -, r, l)"
            )))
        }
    })
}

impl FromStr for StateSpec {
    type Err = CliError;

    /// `family[:key=value,...]`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, r),
            None => (s, ""),
        };
        let family: FamilyName = name.parse()?;
        let mut spec = StateSpec {
            family,
            params: Vec::new(),
            kets: None,
        };
        for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("expected key=value, got `{item}`")))?;
            let key = key.trim();
            if family == FamilyName::Product && key == "kets" {
                let kets = value.trim();
                if kets.is_empty() {
                    return Err(CliError::usage("`kets` must not be empty"));
                }
                spec.kets = Some(kets.to_string());
                continue;
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("`{key}` must be a number, got `{value}`")))?;
            spec = spec.with_param(key, value)?;
        }
        Ok(spec)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.as_str())?;
        let mut items: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if let Some(k) = &self.kets {
            items.push(format!("kets={k}"));
        }
        if !items.is_empty() {
            write!(f, ":{}", items.join(","))?;
        }
        Ok(())
    }
}
