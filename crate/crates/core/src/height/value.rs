use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HeightError;

/// Height of a K3 surface or of a morphism between RDP K3 surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum HeightValue {
    Finite(u32),
    Infinite,
    /// Only a strict lower bound is known.
    GreaterThan(u32),
}

impl HeightValue {
    /// `Finite(h)` for `1 <= h <= 10`, the range allowed for K3 surfaces.
    pub fn finite(h: u32) -> Result<Self, HeightError> {
        if (1..=10).contains(&h) {
            Ok(HeightValue::Finite(h))
        } else {
            Err(HeightError::OutOfRange(h))
        }
    }

    /// Whether the value can be the height of a K3 surface.
    pub fn is_k3_height(&self) -> bool {
        match *self {
            HeightValue::Finite(h) => (1..=10).contains(&h),
            HeightValue::Infinite => true,
            HeightValue::GreaterThan(l) => l < 10,
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightValue::Finite(h) => write!(f, "{h}"),
            HeightValue::Infinite => write!(f, "inf"),
            HeightValue::GreaterThan(l) => write!(f, ">{l}"),
        }
    }
}

impl FromStr for HeightValue {
    type Err = HeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || HeightError::Parse(s.to_string());
        if s == "inf" || s == "∞" {
            return Ok(HeightValue::Infinite);
        }
        if let Some(rest) = s.strip_prefix('>') {
            return Ok(HeightValue::GreaterThan(rest.trim().parse().map_err(|_| bad())?));
        }
        let h: u32 = s.parse().map_err(|_| bad())?;
        if h == 0 {
            return Err(bad());
        }
        Ok(HeightValue::Finite(h))
    }
}

/// `h(pi o pi') = h(pi) + h(pi') - 1`, with infinity absorbing and lower
/// bounds propagated.
pub fn compose_heights(h1: HeightValue, h2: HeightValue) -> HeightValue {
    use HeightValue::*;
    match (h1, h2) {
        (Infinite, _) | (_, Infinite) => Infinite,
        (Finite(a), Finite(b)) => Finite(a + b - 1),
        // h1 >= l + 1 gives h1 + b - 1 >= l + b
        (GreaterThan(l), Finite(b)) | (Finite(b), GreaterThan(l)) => GreaterThan(l + b - 1),
        (GreaterThan(l1), GreaterThan(l2)) => GreaterThan(l1 + l2),
    }
}
