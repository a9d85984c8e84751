//! Dynkin symbols, the maximal coindex table, and RDP specifications.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ffpoly::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("invalid Dynkin symbol {0:?}")]
    BadSymbol(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("coindex {r} exceeds r_max = {rmax} for {dynkin} in characteristic {p}")]
    CoindexTooLarge { p: u32, dynkin: Dynkin, r: u32, rmax: u32 },
    #[error("invalid RDP key {0:?}; expected p:SYMBOL[:r]")]
    BadKey(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A connected ADE diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dynkin {
    pub family: Family,
    pub n: u32,
}

impl Dynkin {
    pub fn new(family: Family, n: u32) -> Result<Self, DynkinError> {
        let ok = match family {
            Family::A => n >= 1,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
        };
        let d = Dynkin { family, n };
        if ok {
            Ok(d)
        } else {
            Err(DynkinError::BadSymbol(d.to_string()))
        }
    }

    pub fn a(n: u32) -> Self {
        Self::new(Family::A, n).expect("A_n")
    }

    pub fn d(n: u32) -> Self {
        Self::new(Family::D, n).expect("D_n")
    }

    pub fn e(n: u32) -> Self {
        Self::new(Family::E, n).expect("E_n")
    }

    /// Rank, i.e. the number of exceptional curves.
    pub fn rank(&self) -> u32 {
        self.n
    }
}

impl fmt::Display for Dynkin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}{}", self.n)
    }
}

impl FromStr for Dynkin {
    type Err = DynkinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DynkinError::BadSymbol(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let n: u32 = rest.parse().map_err(|_| bad())?;
        Dynkin::new(family, n).map_err(|_| bad())
    }
}

/// Maximal coindex of an RDP of type `s` in characteristic `p`.
pub fn rmax(p: u32, s: Dynkin) -> u32 {
    match (p, s.family, s.n) {
        (2, Family::D, n) => n / 2 - 1,
        (2, Family::E, 6) => 1,
        (2, Family::E, 7) => 3,
        (2, Family::E, 8) => 4,
        (3, Family::E, 6) => 1,
        (3, Family::E, 7) => 1,
        (3, Family::E, 8) => 2,
        (5, Family::E, 8) => 1,
        _ => 0,
    }
}

/// An RDP `S^r` in characteristic `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RdpSpec {
    pub p: u32,
    pub dynkin: Dynkin,
    pub r: u32,
}

impl RdpSpec {
    pub fn new(p: u32, dynkin: Dynkin, r: u32) -> Result<Self, DynkinError> {
        if !is_prime(p) {
            return Err(DynkinError::NotPrime(p));
        }
        let rm = rmax(p, dynkin);
        if r > rm {
            return Err(DynkinError::CoindexTooLarge { p, dynkin, r, rmax: rm });
        }
        Ok(RdpSpec { p, dynkin, r })
    }

    pub fn rmax(&self) -> u32 {
        rmax(self.p, self.dynkin)
    }

    pub fn is_taut(&self) -> bool {
        self.rmax() == 0
    }

    /// `m = floor(N/2)`.
    pub fn m(&self) -> u32 {
        self.dynkin.n / 2
    }

    /// Parse `p:S[:r]`, e.g. `2:D12:3` or `5:A4`.
    pub fn parse_key(key: &str) -> Result<Self, DynkinError> {
        let parts: Vec<&str> = key.trim().split(':').collect();
        let bad = || DynkinError::BadKey(key.to_string());
        if !(2..=3).contains(&parts.len()) {
            return Err(bad());
        }
        let p: u32 = parts[0].parse().map_err(|_| bad())?;
        let d: Dynkin = parts[1].parse()?;
        let r: u32 = match parts.get(2) {
            Some(s) => s.parse().map_err(|_| bad())?,
            None => 0,
        };
        RdpSpec::new(p, d, r)
    }

    /// Parse `S[:r]` with the characteristic supplied separately.
    pub fn parse_with_p(p: u32, s: &str) -> Result<Self, DynkinError> {
        Self::parse_key(&format!("{p}:{s}"))
    }
}

impl fmt::Display for RdpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.p, self.dynkin, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rmax_table() {
        assert_eq!(rmax(2, Dynkin::d(12)), 5);
        assert_eq!(rmax(2, Dynkin::d(4)), 1);
        assert_eq!(rmax(2, Dynkin::d(5)), 1);
        assert_eq!(rmax(3, Dynkin::e(8)), 2);
        assert_eq!(rmax(7, Dynkin::e(8)), 0);
        assert_eq!(rmax(3, Dynkin::d(12)), 0);
        assert_eq!(rmax(2, Dynkin::a(7)), 0);
        assert_eq!(rmax(5, Dynkin::e(7)), 0);
    }

    #[test]
    fn symbols_roundtrip() {
        for s in ["A1", "A20", "D4", "D21", "E6", "E7", "E8"] {
            assert_eq!(s.parse::<Dynkin>().unwrap().to_string(), s);
        }
        assert_eq!("d_10".parse::<Dynkin>().unwrap(), Dynkin::d(10));
        for s in ["D3", "E9", "E5", "A0", "B4", "", "D"] {
            assert!(s.parse::<Dynkin>().is_err(), "{s}");
        }
    }

    #[test]
    fn keys() {
        let s = RdpSpec::parse_key("2:D12:3").unwrap();
        assert_eq!((s.p, s.dynkin, s.r, s.m()), (2, Dynkin::d(12), 3, 6));
        assert_eq!(RdpSpec::parse_key("5:A4").unwrap().r, 0);
        assert!(matches!(RdpSpec::parse_key("2:E8:5"), Err(DynkinError::CoindexTooLarge { .. })));
        assert!(matches!(RdpSpec::parse_key("7:E8:1"), Err(DynkinError::CoindexTooLarge { .. })));
        assert!(matches!(RdpSpec::parse_key("4:E8"), Err(DynkinError::NotPrime(4))));
        assert!(RdpSpec::parse_key("2").is_err());
        assert_eq!(RdpSpec::parse_with_p(3, "E8:1").unwrap().to_string(), "3:E8:1");
    }
}
