//! Unitarily invariant norms, all evaluated from singular values except the
//! Hilbert–Schmidt norm, which is computed entrywise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::matrix::{singular_values, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum NormSpec {
    HilbertSchmidt,
    TraceNorm,
    OperatorNorm,
    /// Sum of the k largest singular values.
    KyFan(usize),
    /// Ky Fan norm with k equal to the dimension it is applied to.
    KyFanFull,
    Schatten(f64),
}

impl NormSpec {
    pub fn validate(self) -> Result<Self> {
        match self {
            NormSpec::KyFan(0) => Err(domain("Ky Fan order must be ≥ 1")),
            NormSpec::Schatten(p) if !(p.is_finite() && p >= 1.0) => {
                Err(domain(format!("Schatten exponent {p} must be finite and ≥ 1")))
            }
            _ => Ok(self),
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::HilbertSchmidt => f.write_str("hs"),
            NormSpec::TraceNorm => f.write_str("trace"),
            NormSpec::OperatorNorm => f.write_str("op"),
            NormSpec::KyFan(k) => write!(f, "kyfan:{k}"),
            NormSpec::KyFanFull => f.write_str("kyfan:n"),
            NormSpec::Schatten(p) => write!(f, "schatten:{p}"),
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown norm spec `{s}`"));
        let spec = match s {
            "hs" => NormSpec::HilbertSchmidt,
            "trace" => NormSpec::TraceNorm,
            "op" => NormSpec::OperatorNorm,
            "kyfan:n" => NormSpec::KyFanFull,
            _ => match s.split_once(':').ok_or_else(bad)? {
                ("kyfan", k) => NormSpec::KyFan(k.parse().map_err(|_| bad())?),
                ("schatten", p) => NormSpec::Schatten(p.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            },
        };
        spec.validate().map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<NormSpec> for String {
    fn from(s: NormSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for NormSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The finite family standing in for "every unitarily invariant norm".
pub fn all_default_specs() -> Vec<NormSpec> {
    vec![
        NormSpec::HilbertSchmidt,
        NormSpec::TraceNorm,
        NormSpec::OperatorNorm,
        NormSpec::KyFan(1),
        NormSpec::KyFan(2),
        NormSpec::KyFanFull,
        NormSpec::Schatten(3.0),
        NormSpec::Schatten(4.0),
    ]
}

/// Evaluate a norm from descending singular values.
pub fn norm_from_singular_values(spec: NormSpec, s: &[f64]) -> Result<f64> {
    let spec = spec.validate()?;
    Ok(match spec {
        NormSpec::HilbertSchmidt => s.iter().map(|x| x * x).sum::<f64>().sqrt(),
        NormSpec::TraceNorm | NormSpec::KyFanFull => s.iter().sum(),
        NormSpec::OperatorNorm => s.first().copied().unwrap_or(0.0),
        NormSpec::KyFan(k) => {
            if k > s.len() {
                return Err(domain(format!("Ky Fan order {k} exceeds dimension {}", s.len())));
            }
            s[..k].iter().sum()
        }
        NormSpec::Schatten(p) => {
            let top = s.first().copied().unwrap_or(0.0);
            if top == 0.0 {
                0.0
            } else {
                // factor out s₁ so large p cannot overflow
                top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
            }
        }
    })
}

pub fn norm(spec: NormSpec, m: &ComplexMatrix) -> Result<f64> {
    match spec.validate()? {
        NormSpec::HilbertSchmidt => Ok(m.hs_norm()),
        other => norm_from_singular_values(other, &singular_values(m)?),
    }
}

/// Singular values computed once, evaluated under any number of specs.
#[derive(Debug, Clone)]
pub struct NormCache<'a> {
    matrix: &'a ComplexMatrix,
    sv: Option<Vec<f64>>,
}

impl<'a> NormCache<'a> {
    pub fn new(matrix: &'a ComplexMatrix) -> Self {
        Self { matrix, sv: None }
    }

    pub fn norm(&mut self, spec: NormSpec) -> Result<f64> {
        let spec = spec.validate()?;
        if spec == NormSpec::HilbertSchmidt {
            return Ok(self.matrix.hs_norm());
        }
        if self.sv.is_none() {
            self.sv = Some(singular_values(self.matrix)?);
        }
        norm_from_singular_values(spec, self.sv.as_deref().unwrap_or_default())
    }
}
