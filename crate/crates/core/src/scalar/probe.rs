use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Closed interval `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Strictly increasing convex functions used to instantiate the φ-sandwich
/// bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ConvexProbe {
    /// `x^m`, m ≥ 1. For m = 1 this is the identity, which is affine and
    /// therefore usable on the whole line.
    Power(u32),
    /// `x^{m/2}`, m ≥ 2.
    HalfPower(u32),
    /// `eˣ`, restricted to where it stays finite.
    Exp,
}

impl ConvexProbe {
    /// Probes exercised by the suites.
    pub fn registry() -> Vec<ConvexProbe> {
        vec![
            ConvexProbe::Power(1),
            ConvexProbe::Power(2),
            ConvexProbe::Power(3),
            ConvexProbe::HalfPower(3),
            ConvexProbe::Exp,
        ]
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            ConvexProbe::Power(0) => Err(domain("power probe needs m ≥ 1")),
            ConvexProbe::HalfPower(m) if m < 2 => Err(domain("half-power probe needs m ≥ 2")),
            _ => Ok(self),
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            ConvexProbe::Power(1) => Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY },
            ConvexProbe::Power(_) | ConvexProbe::HalfPower(_) => Domain { lo: 0.0, hi: f64::INFINITY },
            ConvexProbe::Exp => Domain { lo: -700.0, hi: 700.0 },
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            ConvexProbe::Power(m) => x.powi(m as i32),
            ConvexProbe::HalfPower(m) if m % 2 == 0 => x.powi((m / 2) as i32),
            ConvexProbe::HalfPower(m) => x.powf(f64::from(m) / 2.0),
            ConvexProbe::Exp => x.exp(),
        }
    }

    /// Evaluate after checking that `x` lies in the domain.
    pub fn apply(self, x: f64) -> Result<f64> {
        if self.domain().contains(x) {
            Ok(self.eval(x))
        } else {
            Err(domain(format!("{x} outside the domain of {self}")))
        }
    }
}

impl fmt::Display for ConvexProbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexProbe::Power(m) => write!(f, "pow:{m}"),
            ConvexProbe::HalfPower(m) => write!(f, "halfpow:{m}"),
            ConvexProbe::Exp => f.write_str("exp"),
        }
    }
}

impl FromStr for ConvexProbe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "exp" {
            return Ok(ConvexProbe::Exp);
        }
        let (kind, m) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown probe `{s}`")))?;
        let m: u32 = m.parse().map_err(|_| Error::Parse(format!("bad probe order in `{s}`")))?;
        let probe = match kind {
            "pow" => ConvexProbe::Power(m),
            "halfpow" => ConvexProbe::HalfPower(m),
            _ => return Err(Error::Parse(format!("unknown probe `{s}`"))),
        };
        probe.validate().map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<ConvexProbe> for String {
    fn from(p: ConvexProbe) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for ConvexProbe {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
