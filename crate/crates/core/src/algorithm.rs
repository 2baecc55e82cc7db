use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The three selection procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Free order model, 4-competitive.
    FreeOrder,
    /// Laminar matroids, odd/even gap partition, 27e/2-competitive.
    LaminarSimple,
    /// Laminar matroids, interval partition, 3√3·e-competitive.
    LaminarImproved,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::FreeOrder,
        Algorithm::LaminarSimple,
        Algorithm::LaminarImproved,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::FreeOrder => "free-order",
            Algorithm::LaminarSimple => "laminar-simple",
            Algorithm::LaminarImproved => "laminar-improved",
        }
    }

    pub fn needs_laminar(self) -> bool {
        !matches!(self, Algorithm::FreeOrder)
    }

    /// Proven competitive ratio.
    pub fn competitive_bound(self) -> f64 {
        use std::f64::consts::E;
        match self {
            Algorithm::FreeOrder => 4.0,
            Algorithm::LaminarSimple => 27.0 * E / 2.0,
            Algorithm::LaminarImproved => 3.0 * 3f64.sqrt() * E,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}
