//! Charts for the non-taut RDP equations, the `A_{p-1}` chart, and the five
//! quotient maps from a smooth point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::map::RingMap;
use super::ring::{ChartElem, ChartRing};
use super::ChartError;
use crate::dynkin::{rmax, Dynkin, Family, RdpSpec};

/// Largest `A_N` index served by the catalog (the chart has rank `N + 1`).
pub const MAX_A_INDEX: u32 = 15;

/// Sign convention used when solving the equation for `z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignConvention {
    /// Characteristic 2: signs are immaterial.
    Char2,
    /// Equation read as `-z^2 + g = 0`, stored as `w^2 = g`.
    MinusZSquared,
    /// Equation read as `z^2 + g = 0`, stored as `w^2 = -g`.
    PlusZSquared,
    /// `z^(N+1) - xy = 0`.
    Cyclic,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignConvention::Char2 => "char 2, signs immaterial",
            SignConvention::MinusZSquared => "-z^2 + g = 0, stored as z^2 = g",
            SignConvention::PlusZSquared => "z^2 + g = 0, stored as z^2 = -g",
            SignConvention::Cyclic => "z^(N+1) = x*y",
        };
        write!(f, "{s}")
    }
}

/// A catalog chart `u = x, v = y, w = z`.
#[derive(Clone, Debug)]
pub struct RdpChart {
    pub spec: RdpSpec,
    /// Uniform `D_N^0` equation carrying the `z x y^m` term.
    pub alt: bool,
    pub ring: Arc<ChartRing>,
    /// The defining polynomial in `x, y, z` as it reads before normalization.
    pub equation: String,
    pub sign: SignConvention,
}

impl RdpChart {
    pub fn key(&self) -> String {
        if self.alt {
            format!("{}:alt", self.spec)
        } else {
            self.spec.to_string()
        }
    }

    pub fn x(&self) -> ChartElem {
        ChartElem::u(&self.ring)
    }

    pub fn y(&self) -> ChartElem {
        ChartElem::v(&self.ring)
    }

    pub fn z(&self) -> ChartElem {
        ChartElem::w(&self.ring).expect("catalog charts have rank >= 2")
    }

    /// `x^-1 y^-1 z^k`.
    pub fn epsilon(&self, k: u8) -> ChartElem {
        ChartElem::monomial(&self.ring, -1, -1, k, 1)
    }
}

/// Right-hand side coefficients `(P, Q)` of `w^2 = P + Q w` for a non-taut row,
/// with the equation as written and the sign convention.
fn table_row(spec: &RdpSpec, alt: bool) -> Result<(String, String, String, SignConvention), ChartError> {
    let RdpSpec { p, dynkin, r } = *spec;
    let not_in = || ChartError::NotInCatalog(spec.to_string());
    if alt && !(p == 2 && dynkin.family == Family::D && r == 0) {
        return Err(ChartError::BadVariant(spec.to_string()));
    }
    let row = match (p, dynkin.family, dynkin.n) {
        (2, Family::D, n) => {
            let m = n / 2;
            let mixed = r > 0 || alt;
            let k = m - r;
            if n % 2 == 0 {
                let q = if mixed { format!("x*y^{k}") } else { "0".into() };
                let eq =
                    if mixed { format!("z^2 + x^2*y + x*y^{m} + z*x*y^{k}") } else { format!("z^2 + x^2*y + x*y^{m}") };
                (format!("x^2*y + x*y^{m}"), q, eq, SignConvention::Char2)
            } else {
                let q = if mixed { format!("y^{m} + x*y^{k}") } else { format!("y^{m}") };
                let eq =
                    if mixed { format!("z^2 + x^2*y + z*y^{m} + z*x*y^{k}") } else { format!("z^2 + x^2*y + z*y^{m}") };
                ("x^2*y".into(), q, eq, SignConvention::Char2)
            }
        }
        (2, Family::E, 6) => {
            let (q, beta) = if r == 1 { ("y^2 + x*y", " + x*y*z") } else { ("y^2", "") };
            ("x^3".into(), q.into(), format!("z^2 + x^3 + y^2*z{beta}"), SignConvention::Char2)
        }
        (2, Family::E, 7) => {
            let q = ["0", "x^2*y", "y^3", "x*y"][r as usize];
            let beta = if r == 0 { String::new() } else { format!(" + z*{q}") };
            ("x^3 + x*y^3".into(), q.into(), format!("z^2 + x^3 + x*y^3{beta}"), SignConvention::Char2)
        }
        (2, Family::E, 8) => {
            let q = ["0", "x*y^3", "x*y^2", "y^3", "x*y"][r as usize];
            let beta = if r == 0 { String::new() } else { format!(" + z*{q}") };
            ("x^3 + y^5".into(), q.into(), format!("z^2 + x^3 + y^5{beta}"), SignConvention::Char2)
        }
        (3, Family::E, 6) => {
            let g = if r == 1 { "x^3 + y^4 + x^2*y^2" } else { "x^3 + y^4" };
            (g.into(), "0".into(), format!("-z^2 + {g}"), SignConvention::MinusZSquared)
        }
        (3, Family::E, 7) => {
            let g = if r == 1 { "x^3 + x*y^3 + x^2*y^2" } else { "x^3 + x*y^3" };
            (g.into(), "0".into(), format!("-z^2 + {g}"), SignConvention::MinusZSquared)
        }
        (3, Family::E, 8) => {
            let g = ["x^3 + y^5", "x^3 + y^5 + x^2*y^3", "x^3 + y^5 + x^2*y^2"][r as usize];
            (g.into(), "0".into(), format!("-z^2 + {g}"), SignConvention::MinusZSquared)
        }
        (5, Family::E, 8) => {
            let (g, neg) =
                if r == 1 { ("x^3 + y^5 + x*y^4", "-x^3 - y^5 - x*y^4") } else { ("x^3 + y^5", "-x^3 - y^5") };
            (neg.into(), "0".into(), format!("z^2 + {g}"), SignConvention::PlusZSquared)
        }
        _ => return Err(not_in()),
    };
    Ok(row)
}

/// The chart of a catalog RDP. `alt` selects the uniform `D_N^0` equation.
pub fn rdp_chart(spec: &RdpSpec, alt: bool) -> Result<RdpChart, ChartError> {
    let labels = ["x", "y", "z"];
    if spec.dynkin.family == Family::A {
        if alt {
            return Err(ChartError::BadVariant(spec.to_string()));
        }
        let n = spec.dynkin.n;
        if n > MAX_A_INDEX {
            return Err(ChartError::NotInCatalog(spec.to_string()));
        }
        let mut coeffs = vec!["0"; n as usize + 1];
        coeffs[0] = "x*y";
        let ring = ChartRing::new(spec.p, labels, &spec.to_string(), &coeffs)?;
        return Ok(RdpChart {
            spec: *spec,
            alt,
            ring,
            equation: format!("z^{} - x*y", n + 1),
            sign: SignConvention::Cyclic,
        });
    }
    if spec.is_taut() {
        return Err(ChartError::NotInCatalog(spec.to_string()));
    }
    let (pp, q, equation, sign) = table_row(spec, alt)?;
    let name = if alt { format!("{spec}:alt") } else { spec.to_string() };
    let ring = ChartRing::new(spec.p, labels, &name, &[&pp, &q])?;
    Ok(RdpChart { spec: *spec, alt, ring, equation, sign })
}

/// Parse `p:S[:r][:alt]`.
pub fn rdp_chart_from_key(key: &str) -> Result<RdpChart, ChartError> {
    let key = key.trim();
    let (base, alt) = match key.strip_suffix(":alt") {
        Some(b) => (b, true),
        None => (key, false),
    };
    let spec = RdpSpec::parse_key(base).map_err(|e| ChartError::BadKey(format!("{key}: {e}")))?;
    rdp_chart(&spec, alt)
}

/// Every Table-style entry with `N <= max_n`: all non-taut `(p, S, r)`, plus
/// the uniform variant of each `D_N^0`.
pub fn table_entries(max_n: u32) -> Vec<(RdpSpec, bool)> {
    let mut out = Vec::new();
    for s in non_taut_types(max_n) {
        for r in 0..=rmax(s.0, s.1) {
            let spec = RdpSpec::new(s.0, s.1, r).expect("r <= rmax");
            out.push((spec, false));
            if s.1.family == Family::D && r == 0 {
                out.push((spec, true));
            }
        }
    }
    out
}

/// `(p, S)` with `rmax > 0` and index at most `max_n`.
pub fn non_taut_types(max_n: u32) -> Vec<(u32, Dynkin)> {
    let mut out: Vec<(u32, Dynkin)> = (4..=max_n).map(|n| (2, Dynkin::d(n))).collect();
    for (p, e) in [(2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8), (5, 8)] {
        if e <= max_n {
            out.push((p, Dynkin::e(e)));
        }
    }
    out
}

/// Number of catalog equations for a type, not counting the uniform `D_N^0` variant.
pub fn equation_count(p: u32, s: Dynkin) -> usize {
    (0..=rmax(p, s)).filter(|&r| RdpSpec::new(p, s, r).ok().and_then(|sp| rdp_chart(&sp, false).ok()).is_some()).count()
}

/// The five kinds of quotient map from a smooth point onto an RDP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuotientCase {
    /// `mu_p`, onto `A_{p-1}`.
    MuA { p: u32 },
    /// `alpha_2`, onto `D_{2^n}^0`; Witt length `n`.
    AlphaD { n: u32 },
    /// `alpha_2`, onto `E_8^0`.
    AlphaE8Char2,
    /// `alpha_3`, onto `E_6^0`.
    AlphaE6Char3,
    /// `alpha_5`, onto `E_8^0`.
    AlphaE8Char5,
}

impl QuotientCase {
    /// Cases whose Witt length is within the supported range.
    pub fn all() -> Vec<QuotientCase> {
        let mut out: Vec<_> = [2, 3, 5, 7].into_iter().map(|p| QuotientCase::MuA { p }).collect();
        out.extend((2..=4).map(|n| QuotientCase::AlphaD { n }));
        out.extend([QuotientCase::AlphaE8Char2, QuotientCase::AlphaE6Char3, QuotientCase::AlphaE8Char5]);
        out
    }

    /// Ordinal `1..=5` in the standard listing; `param` is `p` for the first
    /// kind and `n` for the second.
    pub fn from_index(index: u32, param: Option<u32>) -> Result<Self, ChartError> {
        let c = match index {
            1 => QuotientCase::MuA { p: param.unwrap_or(2) },
            2 => QuotientCase::AlphaD { n: param.unwrap_or(2) },
            3 => QuotientCase::AlphaE8Char2,
            4 => QuotientCase::AlphaE6Char3,
            5 => QuotientCase::AlphaE8Char5,
            _ => return Err(ChartError::BadKey(format!("quotient case {index}"))),
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ChartError> {
        match *self {
            QuotientCase::MuA { p } if !crate::ffpoly::is_prime(p) || p > MAX_A_INDEX + 1 => {
                Err(ChartError::BadKey(format!("mu_p case needs a prime p <= {}, got {p}", MAX_A_INDEX + 1)))
            }
            QuotientCase::AlphaD { n } if !(2..=4).contains(&n) => {
                Err(ChartError::BadKey(format!("alpha_2 D case needs 2 <= n <= 4, got {n}")))
            }
            _ => Ok(()),
        }
    }

    pub fn p(&self) -> u32 {
        match *self {
            QuotientCase::MuA { p } => p,
            QuotientCase::AlphaD { .. } | QuotientCase::AlphaE8Char2 => 2,
            QuotientCase::AlphaE6Char3 => 3,
            QuotientCase::AlphaE8Char5 => 5,
        }
    }

    /// Witt length in which the pullback is computed.
    pub fn n(&self) -> usize {
        match *self {
            QuotientCase::MuA { .. } => 1,
            QuotientCase::AlphaD { n } => n as usize,
            QuotientCase::AlphaE8Char2 => 4,
            QuotientCase::AlphaE6Char3 | QuotientCase::AlphaE8Char5 => 2,
        }
    }

    pub fn dynkin(&self) -> Dynkin {
        match *self {
            QuotientCase::MuA { p } => Dynkin::a(p - 1),
            QuotientCase::AlphaD { n } => Dynkin::d(1 << n),
            QuotientCase::AlphaE8Char2 | QuotientCase::AlphaE8Char5 => Dynkin::e(8),
            QuotientCase::AlphaE6Char3 => Dynkin::e(6),
        }
    }

    pub fn group(&self) -> &'static str {
        match self {
            QuotientCase::MuA { .. } => "mu",
            _ => "alpha",
        }
    }
}

impl fmt::Display for QuotientCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quot:{}:{}:{}", self.p(), self.group(), self.dynkin())
    }
}

impl FromStr for QuotientCase {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, ChartError> {
        let bad = || ChartError::BadKey(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 4 || parts[0] != "quot" {
            return Err(bad());
        }
        let p: u32 = parts[1].parse().map_err(|_| bad())?;
        let d: Dynkin = parts[3].parse().map_err(|_| bad())?;
        let case = match (parts[2], p, d.family, d.n) {
            ("mu", p, Family::A, n) if n + 1 == p => QuotientCase::MuA { p },
            ("alpha", 2, Family::D, n) if n.is_power_of_two() => QuotientCase::AlphaD { n: n.trailing_zeros() },
            ("alpha", 2, Family::E, 8) => QuotientCase::AlphaE8Char2,
            ("alpha", 3, Family::E, 6) => QuotientCase::AlphaE6Char3,
            ("alpha", 5, Family::E, 8) => QuotientCase::AlphaE8Char5,
            _ => return Err(bad()),
        };
        case.validate()?;
        Ok(case)
    }
}

/// Source chart, smooth target chart and the map between them.
#[derive(Clone, Debug)]
pub struct QuotientChart {
    pub case: QuotientCase,
    pub source: Arc<ChartRing>,
    pub target: Arc<ChartRing>,
    pub map: RingMap,
    /// Witt length of the pullback identity.
    pub n: usize,
    /// `x^-1 y^-1 z^k` in the source.
    pub epsilon: ChartElem,
    /// Expected `e'` in the target: the pullback is `V^{n-1}(e')`.
    pub expected: ChartElem,
}

/// Build the quotient map of a case.
pub fn quotient_map_chart(case: QuotientCase) -> Result<QuotientChart, ChartError> {
    case.validate()?;
    let p = case.p();
    let name = case.to_string();
    let (source, target, map, eps_k, expected) = match case {
        QuotientCase::MuA { p } => {
            let a = rdp_chart(&RdpSpec::new(p, Dynkin::a(p - 1), 0).expect("A_{p-1} is taut"), false)?;
            let b = ChartRing::laurent(p, ["X", "Y"], "smooth")?;
            let z = ChartElem::monomial(&b, 1, 1, 0, 1);
            let map = RingMap::new(&name, &a.ring, &b, (p as i32, 0), (0, p as i32), Some(z))?;
            let e = ChartElem::monomial(&b, -1, -1, 0, 1);
            (a.ring, b, map, (p - 1) as u8, e)
        }
        QuotientCase::AlphaD { n } => {
            let spec = RdpSpec::new(2, Dynkin::d(1 << n), 0).expect("D_{2^n}^0");
            let a = rdp_chart(&spec, false)?;
            let b = ChartRing::laurent(2, ["X", "Y"], "smooth")?;
            let z = ChartElem::parse(&b, &format!("X^2*Y + X*Y^{}", 1u32 << (n - 1)))?;
            let map = RingMap::new(&name, &a.ring, &b, (2, 0), (0, 2), Some(z))?;
            let e = ChartElem::monomial(&b, -1, -1, 0, 1);
            (a.ring, b, map, 1, e)
        }
        QuotientCase::AlphaE8Char2 => {
            let a = rdp_chart(&RdpSpec::new(2, Dynkin::e(8), 0).expect("E_8^0"), false)?;
            let b = ChartRing::laurent(2, ["X", "Y"], "smooth")?;
            let z = ChartElem::parse(&b, "X^3 + Y^5")?;
            let map = RingMap::new(&name, &a.ring, &b, (2, 0), (0, 2), Some(z))?;
            let e = ChartElem::monomial(&b, -1, -1, 0, 1);
            (a.ring, b, map, 1, e)
        }
        QuotientCase::AlphaE6Char3 => {
            let a = rdp_chart(&RdpSpec::new(3, Dynkin::e(6), 0).expect("E_6^0"), false)?;
            let b = ChartRing::new(3, ["x", "Y", "Z"], "smooth", &["x + Y^4", "0"])?;
            let z = ChartElem::parse(&b, "Z*(x + Y^4)")?;
            let map = RingMap::new(&name, &a.ring, &b, (1, 0), (0, 3), Some(z))?;
            let e = ChartElem::parse(&b, "-x^-1*Y^-1*Z")?;
            (a.ring, b, map, 1, e)
        }
        QuotientCase::AlphaE8Char5 => {
            // y -> -y turns the catalog's z^2 = -x^3 - y^5 into this form
            let a = ChartRing::new(5, ["x", "y", "z"], "5:E8:0 (z^2 = y^5 - x^3)", &["y^5 - x^3", "0"])?;
            let b = ChartRing::new(5, ["X", "y", "Z"], "smooth", &["y - X^3", "0"])?;
            let z = ChartElem::parse(&b, "Z*(y - X^3)^2")?;
            let map = RingMap::new(&name, &a, &b, (5, 0), (0, 1), Some(z))?;
            let e = ChartElem::parse(&b, "-X^-1*y^-1*Z")?;
            (a, b, map, 1, e)
        }
    };
    let epsilon = ChartElem::monomial(&source, -1, -1, eps_k, 1);
    debug_assert_eq!(epsilon.ring().p(), p);
    Ok(QuotientChart { case, source, target, map, n: case.n(), epsilon, expected })
}
