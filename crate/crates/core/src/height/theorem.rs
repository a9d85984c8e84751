use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HeightError, HeightValue};
use crate::dynkin::{rmax, Dynkin, Family, RdpSpec};

/// The subsequence `(r_1, ..., r_l)` of `(r_max, ..., 1)`; `r = r_h` on a
/// surface of height `h`.
pub fn height_sequence(p: u32, s: Dynkin) -> Result<Vec<u32>, HeightError> {
    let rm = rmax(p, s);
    if rm == 0 {
        return Err(HeightError::Taut { p, dynkin: s });
    }
    Ok(match (p, s.family, s.n) {
        (2, Family::D, n) if n >= 10 => vec![n / 2 - 1, n / 2 - 2, n / 2 - 4],
        (2, Family::D, n) if n >= 8 => vec![n / 2 - 1, n / 2 - 2],
        (2, Family::E, 8) => vec![4, 3, 2],
        _ => (1..=rm).rev().collect(),
    })
}

/// Characteristic-2 RDPs that never occur on an RDP K3 surface because of
/// the Frobenius computation: `D_N^r` with `r > 0` and
/// `floor(N/2) - r` not in `{1, 2, 4}`, and `E_8^1`.
pub fn excluded_by_frobenius(spec: &RdpSpec) -> bool {
    match (spec.p, spec.dynkin.family, spec.dynkin.n, spec.r) {
        (2, Family::D, _, r) if r > 0 => ![1, 2, 4].contains(&(spec.m() - r)),
        (2, Family::E, 8, 1) => true,
        _ => false,
    }
}

/// Height of an RDP K3 surface carrying an RDP of type `spec`.
///
/// `Finite(i)` when `r = r_i`, `GreaterThan(l)` when `r = 0`, and
/// [`HeightError::DoesNotOccur`] when `r > 0` is missing from the sequence.
/// Taut types give `GreaterThan(0)`, which carries no information.
pub fn height_from_rdp(spec: &RdpSpec) -> Result<HeightValue, HeightError> {
    if spec.is_taut() {
        return Ok(HeightValue::GreaterThan(0));
    }
    let seq = height_sequence(spec.p, spec.dynkin)?;
    if spec.r == 0 {
        return Ok(HeightValue::GreaterThan(seq.len() as u32));
    }
    match seq.iter().position(|&r| r == spec.r) {
        Some(i) => Ok(HeightValue::Finite(i as u32 + 1)),
        None => Err(HeightError::DoesNotOccur(*spec)),
    }
}

/// Verdict with the reason it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realizability {
    pub realizable: bool,
    pub reason: String,
    pub height: Option<HeightValue>,
}

/// Whether an RDP of type `spec` occurs on some RDP K3 surface.
pub fn rdp_realizable_on_k3(spec: &RdpSpec) -> Realizability {
    let n = spec.dynkin.n;
    if spec.is_taut() {
        let ok = taut_realizable(spec.p, spec.dynkin).expect("taut");
        let reason = if ok { "taut type realizable in this characteristic" } else { "taut type not realizable" };
        return Realizability { realizable: ok, reason: reason.into(), height: None };
    }
    if excluded_by_frobenius(spec) {
        return Realizability {
            realizable: false,
            reason: "coindex incompatible with every height".into(),
            height: None,
        };
    }
    if spec.p == 2 && spec.dynkin == Dynkin::d(19) && spec.r == 8 {
        return Realizability {
            realizable: false,
            reason: "D19^8 forces a rank-20 lattice with no unimodular overlattice".into(),
            height: Some(HeightValue::Finite(1)),
        };
    }
    let h = height_from_rdp(spec).expect("not excluded");
    let (ok, bound) = match h {
        HeightValue::Finite(h) => (n + 2 * h < 22, format!("N < {}", 22 - 2 * h as i64)),
        _ => (n < 22, "N < 22".to_string()),
    };
    let reason = format!("{bound} is {}", if ok { "satisfied" } else { "violated" });
    Realizability { realizable: ok, reason, height: Some(h) }
}

/// Realizability of a taut RDP of type `s` in characteristic `p`.
pub fn taut_realizable(p: u32, s: Dynkin) -> Result<bool, HeightError> {
    if rmax(p, s) > 0 {
        return Err(HeightError::NotTaut { p, dynkin: s });
    }
    Ok(match (s.family, s.n) {
        (_, n) if n <= 19 => true,
        (Family::A, 20) => p == 3 || p == 7 || [2, 8, 10, 11, 13, 19].contains(&(p % 21)),
        (Family::A, 21) => p == 11,
        _ => false,
    })
}

/// Whether `sub` is a non-empty connected subdiagram of `s`.
pub fn is_connected_subdiagram(sub: Dynkin, s: Dynkin) -> bool {
    if sub == s {
        return true;
    }
    maximal_subdiagrams(s).into_iter().any(|t| is_connected_subdiagram(sub, t))
}

/// Connected diagrams obtained by deleting one end node.
fn maximal_subdiagrams(s: Dynkin) -> Vec<Dynkin> {
    let n = s.n;
    let mut out = Vec::new();
    match s.family {
        Family::A if n > 1 => out.push(Dynkin::a(n - 1)),
        Family::A => {}
        Family::D => {
            out.push(Dynkin::a(n - 1));
            if n > 4 {
                out.push(Dynkin::d(n - 1));
            }
        }
        Family::E => {
            out.push(Dynkin::a(n - 1));
            out.push(Dynkin::d(n - 1));
            if n > 6 {
                out.push(Dynkin::e(n - 1));
            }
        }
    }
    out
}

/// Coindex of the RDP of type `sub` on the partial resolution of `S^r`.
pub fn partial_resolution_coindex(p: u32, s: Dynkin, r: u32, sub: Dynkin) -> Result<u32, HeightError> {
    if !is_connected_subdiagram(sub, s) {
        return Err(HeightError::NotSubdiagram { sub, dynkin: s });
    }
    let spec = RdpSpec::new(p, s, r)?;
    let drop = spec.rmax() - rmax(p, sub);
    Ok(r.saturating_sub(drop))
}

/// A multiset of RDPs on one surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingConfig(pub Vec<RdpSpec>);

impl SingConfig {
    pub fn total_rank(&self) -> u32 {
        self.0.iter().map(|s| s.dynkin.n).sum()
    }

    /// Parse e.g. `2*D4:0 + A2` in characteristic `p`; `,` also separates.
    pub fn parse(p: u32, s: &str) -> Result<Self, HeightError> {
        let mut out = Vec::new();
        for item in s.split(['+', ',']).map(str::trim).filter(|t| !t.is_empty()) {
            let (k, rest) = match item.split_once('*') {
                Some((k, rest)) => (k.trim().parse::<usize>().map_err(|_| HeightError::Parse(item.into()))?, rest),
                None => (1, item),
            };
            let spec = RdpSpec::parse_with_p(p, rest.trim())?;
            out.extend(std::iter::repeat_n(spec, k));
        }
        if out.is_empty() {
            return Err(HeightError::Parse(s.to_string()));
        }
        out.sort();
        Ok(SingConfig(out))
    }

    fn of(specs: &[(usize, RdpSpec)]) -> Self {
        let mut v: Vec<RdpSpec> = specs.iter().flat_map(|&(k, s)| std::iter::repeat_n(s, k)).collect();
        v.sort();
        SingConfig(v)
    }
}

impl fmt::Display for SingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(usize, RdpSpec)> = Vec::new();
        for s in &self.0 {
            match groups.last_mut() {
                Some((k, t)) if t == s => *k += 1,
                _ => groups.push((1, *s)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|(k, s)| {
                let body = if s.is_taut() { s.dynkin.to_string() } else { format!("{}^{}", s.dynkin, s.r) };
                if *k == 1 {
                    body
                } else {
                    format!("{k}{body}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `sum N_i < 22 - 2h` for finite `h`, `sum N_i < 22` otherwise. A lower
/// bound leaves infinite height possible, so only the weaker bound applies.
pub fn picard_bound_ok(h: HeightValue, config: &SingConfig) -> bool {
    let n = config.total_rank() as i64;
    match h {
        HeightValue::Finite(h) => n < 22 - 2 * h as i64,
        HeightValue::Infinite | HeightValue::GreaterThan(_) => n < 22,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupScheme {
    Mu,
    Alpha,
}

impl std::str::FromStr for GroupScheme {
    type Err = HeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mu" | "mu_p" => Ok(GroupScheme::Mu),
            "alpha" | "alpha_p" => Ok(GroupScheme::Alpha),
            _ => Err(HeightError::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for GroupScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupScheme::Mu => "mu",
            GroupScheme::Alpha => "alpha",
        })
    }
}

/// A row of the maximal quotient table: group, characteristic, `Sing(Y)`,
/// and the height of the quotient map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientRow {
    pub group: GroupScheme,
    pub p: u32,
    pub sing: SingConfig,
    pub height: u32,
}

fn spec(p: u32, s: Dynkin, r: u32) -> RdpSpec {
    RdpSpec::new(p, s, r).expect("table entry")
}

/// Every maximal `mu_p`- or `alpha_p`-quotient configuration.
pub fn quotient_table() -> Vec<QuotientRow> {
    let mut rows: Vec<QuotientRow> = [2u32, 3, 5, 7]
        .into_iter()
        .map(|p| QuotientRow {
            group: GroupScheme::Mu,
            p,
            sing: SingConfig::of(&[(24 / (p as usize + 1), spec(p, Dynkin::a(p - 1), 0))]),
            height: 1,
        })
        .collect();
    let alpha = [
        (2, 2, Dynkin::d(4), 2),
        (3, 2, Dynkin::e(6), 2),
        (5, 2, Dynkin::e(8), 2),
        (2, 1, Dynkin::d(8), 3),
        (2, 1, Dynkin::e(8), 4),
    ];
    rows.extend(alpha.into_iter().map(|(p, k, s, h)| QuotientRow {
        group: GroupScheme::Alpha,
        p,
        sing: SingConfig::of(&[(k, spec(p, s, 0))]),
        height: h,
    }));
    rows
}

/// Height of a maximal `G`-quotient map with the given `Sing(Y)`.
pub fn quotient_height(g: GroupScheme, p: u32, sing: &SingConfig) -> Result<HeightValue, HeightError> {
    quotient_table()
        .into_iter()
        .find(|row| row.group == g && row.p == p && row.sing == *sing)
        .map(|row| HeightValue::Finite(row.height))
        .ok_or_else(|| HeightError::NotInTable(format!("{g}, p = {p}, {sing}")))
}

/// A row of the `Z/pZ`-quotient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleRow {
    pub p: u32,
    pub sing: SingConfig,
    pub height: u32,
}

pub fn etale_table() -> Vec<EtaleRow> {
    [
        (2, 2, Dynkin::d(4), 1, 1),
        (3, 2, Dynkin::e(6), 1, 1),
        (5, 2, Dynkin::e(8), 1, 1),
        (2, 1, Dynkin::d(8), 2, 2),
        (2, 1, Dynkin::e(8), 2, 3),
    ]
    .into_iter()
    .map(|(p, k, s, r, h)| EtaleRow { p, sing: SingConfig::of(&[(k, spec(p, s, r))]), height: h })
    .collect()
}

/// Height of `X` and `Y` for a `Z/pZ`-quotient `X -> Y` of a K3 surface.
pub fn etale_quotient_height(p: u32, sing: &SingConfig) -> Result<HeightValue, HeightError> {
    etale_table()
        .into_iter()
        .find(|row| row.p == p && row.sing == *sing)
        .map(|row| HeightValue::Finite(row.height))
        .ok_or_else(|| HeightError::NotInTable(format!("Z/pZ, p = {p}, {sing}")))
}

/// A maximal quotient `pi` with `Sing(Y)` from `row` and its dual `pi'`
/// with `Sing(X)` from `dual`; the surfaces have height `h(pi) + h(pi') - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct DualPair {
    pub row: QuotientRow,
    pub dual: QuotientRow,
    pub height: HeightValue,
    /// Both singularity configurations satisfy the Picard bound.
    pub picard_ok: bool,
}

pub fn dual_pairs() -> Vec<DualPair> {
    let table = quotient_table();
    let mut out = Vec::new();
    for row in &table {
        for dual in table.iter().filter(|d| d.p == row.p) {
            let height = super::compose_heights(HeightValue::Finite(row.height), HeightValue::Finite(dual.height));
            let picard_ok = picard_bound_ok(height, &row.sing) && picard_bound_ok(height, &dual.sing);
            out.push(DualPair { row: row.clone(), dual: dual.clone(), height, picard_ok });
        }
    }
    out
}
