use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Logarithm base used for every entropy-valued quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Nats,
    Bits,
}

impl LogBase {
    /// Converts a quantity measured in nats into this base.
    #[inline]
    pub fn from_nats(self, value: f64) -> f64 {
        match self {
            LogBase::Nats => value,
            LogBase::Bits => value / std::f64::consts::LN_2,
        }
    }

    /// `p log p` with the convention `0 log 0 = 0`.
    #[inline]
    pub fn plogp(self, p: f64) -> f64 {
        if p <= 0.0 {
            0.0
        } else {
            self.from_nats(p * p.ln())
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Nats => "nats",
            LogBase::Bits => "bits",
        })
    }
}

impl FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nats" | "nat" | "e" | "ln" => Ok(LogBase::Nats),
            "bits" | "bit" | "2" | "log2" => Ok(LogBase::Bits),
            other => Err(format!("unknown log base `{other}` (expected nats or bits)")),
        }
    }
}
