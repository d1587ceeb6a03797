use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which reading of a formula to evaluate.
///
/// `Printed` evaluates the formula exactly as typeset. `Corrected` evaluates
/// the reading that is consistent with its own derivation. Formulas without a
/// known typesetting problem only have the `Printed` reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Corrected,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}
