//! Drivers that compute Frobenius images and quotient pullbacks of explicit
//! classes and compare them with their closed-form predictions.

use rayon::prelude::*;
use serde::Serialize;

use super::class::{frobenius_class, is_generator, is_torsion, pullback_class, scalar_mul_class, unit_multiple};
use super::{CohClass, CohError, IdealSpec};
use crate::chartring::{non_taut_types, quotient_map_chart, rdp_chart, ChartElem, QuotientCase, RdpChart};
use crate::dynkin::{rmax, Dynkin, Family, RdpSpec};

/// Kinds of check run by the drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Frobenius on `D_N^r`, characteristic 2.
    FrobD,
    /// Frobenius on the `(x, y^2, z)`-torsion of `E_8^r`, `r <= 1`, characteristic 2.
    FrobE8I2,
    /// Frobenius on `E_N^r` at the threshold coindex.
    FrobE,
    /// Pullback along a quotient map from a smooth point.
    Quotient,
    /// The classes `[y^t x^-1 y^-j z]` span the `(x, y^j, z)`-torsion.
    Basis,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] =
        [CheckKind::FrobD, CheckKind::FrobE8I2, CheckKind::FrobE, CheckKind::Quotient, CheckKind::Basis];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::FrobD => "frob-d",
            CheckKind::FrobE8I2 => "frob-e8-i2",
            CheckKind::FrobE => "frob-e",
            CheckKind::Quotient => "quotient",
            CheckKind::Basis => "basis",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = CohError;

    fn from_str(s: &str) -> Result<Self, CohError> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CohError::Hypothesis(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub id: String,
    pub input: String,
    pub computed: String,
    pub predicted: String,
    /// Sub-checks that failed; empty on success.
    pub failures: Vec<String>,
    pub pass: bool,
}

impl CheckReport {
    fn new(kind: CheckKind, id: String, input: &CohClass, computed: &CohClass, predicted: &CohClass) -> Self {
        CheckReport {
            kind,
            id,
            input: input.to_string(),
            computed: computed.to_string(),
            predicted: predicted.to_string(),
            failures: Vec::new(),
            pass: true,
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
            self.pass = false;
        }
    }
}

/// `C_1(n, j) = 2^{n-1} (2j - 1) + 1`.
pub fn c1(n: u32, j: u32) -> i64 {
    (1i64 << (n - 1)) * (2 * j as i64 - 1) + 1
}

fn eps(chart: &RdpChart, j: i32, k: u8) -> ChartElem {
    ChartElem::monomial(&chart.ring, -1, -j, k, 1)
}

/// Class of `V^{n-1}[a]` in `W_n`.
fn top(a: &ChartElem, n: usize) -> CohClass {
    CohClass::of_supported(a, n, n - 1)
}

fn restrict_to_one(e: &CohClass) -> CohClass {
    CohClass::from_residual(e.chart(), vec![e.components()[0].clone()]).expect("residual")
}

/// Hypotheses of the `D_N` Frobenius formula.
pub fn frob_d_admissible(spec: &RdpSpec, n: u32, j: u32) -> Result<(), CohError> {
    let bad = |m: String| Err(CohError::Hypothesis(m));
    if spec.p != 2 || spec.dynkin.family != Family::D {
        return bad(format!("{spec} is not D_N in characteristic 2"));
    }
    if !(1..=4).contains(&n) {
        return bad(format!("Witt length {n} outside 1..=4"));
    }
    if j == 0 {
        return bad("j must be positive".into());
    }
    let m = spec.m() as i64;
    if m < c1(n, j) {
        return bad(format!("floor(N/2) = {m} < C_1({n}, {j}) = {}", c1(n, j)));
    }
    if n > 1 && m - (spec.r as i64) < c1(n - 1, j) {
        return bad(format!("floor(N/2) - r = {} < C_1({}, {j}) = {}", m - spec.r as i64, n - 1, c1(n - 1, j)));
    }
    Ok(())
}

/// `F(e)` for `e = [(x^-1 y^-j z, 0, ...)]` on `D_N^r`, compared with `0` when
/// `a = floor(N/2) - r - C_1(n, j) >= 0` and with `V^{n-1}[x^-1 y^a z]` otherwise.
pub fn verify_frob_d(spec: &RdpSpec, alt: bool, n: u32, j: u32) -> Result<CheckReport, CohError> {
    frob_d_admissible(spec, n, j)?;
    let chart = rdp_chart(spec, alt)?;
    let nn = n as usize;
    let e = CohClass::of_supported(&eps(&chart, j as i32, 1), nn, 0);
    let fe = frobenius_class(&e);
    let a = spec.m() as i64 - spec.r as i64 - c1(n, j);
    let predicted = if a >= 0 {
        CohClass::zero(&chart.ring, nn)
    } else {
        top(&ChartElem::monomial(&chart.ring, -1, a as i32, 1, 1), nn)
    };
    let mut rep = CheckReport::new(CheckKind::FrobD, format!("frob-d:{}:n{n}:j{j}", chart.key()), &e, &fe, &predicted);
    rep.require(fe == predicted, format!("F(e) differs from prediction (a = {a})"));
    rep.require(is_torsion(&e, &IdealSpec::i_j(&chart.ring, j))?, format!("e is not (x, y^{j}, z)-torsion"));
    rep.require(is_generator(&restrict_to_one(&e), j)?, "R^{n-1}(e) is not a generator");
    if a < 0 {
        let e1 = CohClass::of_supported(&ChartElem::monomial(&chart.ring, -1, a as i32, 1, 1), 1, 0);
        rep.require(is_generator(&e1, (-a) as u32)?, format!("e' does not generate the (x, y^{}, z)-torsion", -a));
    }
    Ok(rep)
}

/// `E_8^r`, `r <= 1`, `p = 2`: `e = [x^-1 y^-2 z]` is `(x, y^2, z)`-torsion but
/// not `m`-torsion, and `F(e)` is `[x^-1 y^-1 z]` for `r = 1` and `0` for `r = 0`.
pub fn verify_frob_e8_i2(r: u32) -> Result<CheckReport, CohError> {
    if r > 1 {
        return Err(CohError::Hypothesis(format!("coindex {r} > 1")));
    }
    let chart = rdp_chart(&RdpSpec::new(2, Dynkin::e(8), r).expect("E8 coindex"), false)?;
    let e = CohClass::of_supported(&eps(&chart, 2, 1), 1, 0);
    let fe = frobenius_class(&e);
    let predicted =
        if r == 1 { CohClass::of_supported(&eps(&chart, 1, 1), 1, 0) } else { CohClass::zero(&chart.ring, 1) };
    let mut rep = CheckReport::new(CheckKind::FrobE8I2, format!("frob-e8-i2:{}", chart.key()), &e, &fe, &predicted);
    rep.require(fe == predicted, "F(e) differs from prediction");
    rep.require(is_torsion(&e, &IdealSpec::i_j(&chart.ring, 2))?, "e is not (x, y^2, z)-torsion");
    rep.require(!is_torsion(&e, &IdealSpec::maximal(&chart.ring))?, "e is m-torsion");
    if r == 1 {
        rep.require(is_generator(&fe, 1)?, "F(e) is not a generator");
    }
    Ok(rep)
}

/// Largest Witt length covered by the `E_N` Frobenius formula, if any.
pub fn frob_e_max_length(p: u32, s: Dynkin) -> Option<u32> {
    match (p, s.family, s.n) {
        (2, Family::E, 7) | (2, Family::E, 8) => Some(3),
        (3, Family::E, 8) => Some(2),
        (2, Family::E, 6) | (3, Family::E, 6) | (3, Family::E, 7) | (5, Family::E, 8) => Some(1),
        _ => None,
    }
}

/// `F(e)` for `e = [(x^-1 y^-1 z, 0, ...)]` on `E_N^r`: zero below the threshold
/// `r = rmax + 1 - n`, a unit times `V^{n-1}(e)` at it.
pub fn verify_frob_e(spec: &RdpSpec, n: u32) -> Result<CheckReport, CohError> {
    let nmax = frob_e_max_length(spec.p, spec.dynkin)
        .ok_or_else(|| CohError::Hypothesis(format!("{spec} is not covered by the E_N formula")))?;
    if n == 0 || n > nmax {
        return Err(CohError::Hypothesis(format!("Witt length {n} outside 1..={nmax} for {spec}")));
    }
    let threshold = spec.rmax() as i64 + 1 - n as i64;
    if spec.r as i64 > threshold {
        return Err(CohError::Hypothesis(format!("coindex {} > rmax + 1 - n = {threshold}", spec.r)));
    }
    let chart = rdp_chart(spec, false)?;
    let nn = n as usize;
    let e = CohClass::of_supported(&chart.epsilon(1), nn, 0);
    let fe = frobenius_class(&e);
    let at_threshold = spec.r as i64 == threshold;
    let predicted = if at_threshold { top(&chart.epsilon(1), nn) } else { CohClass::zero(&chart.ring, nn) };
    let mut rep = CheckReport::new(CheckKind::FrobE, format!("frob-e:{}:n{n}", chart.key()), &e, &fe, &predicted);
    if at_threshold {
        match unit_multiple(&fe, &predicted) {
            Some(c) if c != 1 => rep.predicted = format!("{c} * {}", rep.predicted),
            Some(_) => {}
            None => rep.require(false, "F(e) is not a unit multiple of V^{n-1}(e)"),
        }
    } else {
        rep.require(fe.is_zero(), "F(e) is nonzero below the threshold");
    }
    rep.require(is_torsion(&e, &IdealSpec::maximal(&chart.ring))?, "e is not m-torsion");
    rep.require(is_generator(&restrict_to_one(&e), 1)?, "R^{n-1}(e) is not a generator");
    Ok(rep)
}

/// `pi^*(e) = V^{n-1}(e')` along a quotient map, with `e'` generating the
/// `m_B`-torsion of the smooth point.
pub fn verify_quotient(case: QuotientCase) -> Result<CheckReport, CohError> {
    let q = quotient_map_chart(case)?;
    let n = q.n;
    let e = CohClass::of_supported(&q.epsilon, n, 0);
    let pulled = pullback_class(&q.map, &e)?;
    let e1 = CohClass::of_supported(&q.expected, 1, 0);
    let predicted = top(&q.expected, n);
    let mut rep = CheckReport::new(CheckKind::Quotient, format!("quotient:{case}"), &e, &pulled, &predicted);
    match unit_multiple(&pulled, &predicted) {
        Some(c) if c != 1 => rep.predicted = format!("{c} * {}", rep.predicted),
        Some(_) => {}
        None => rep.require(false, "pullback is not a unit multiple of V^{n-1}(e')"),
    }
    rep.require(!predicted.is_zero(), "predicted class vanishes");
    rep.require(is_torsion(&e, &IdealSpec::maximal(&q.source))?, "e is not m_A-torsion");
    rep.require(is_generator(&restrict_to_one(&e), 1)?, "R^{n-1}(e) is not a generator");
    rep.require(is_generator(&e1, 1)?, "e' is not a generator");
    Ok(rep)
}

/// `[y^t x^-1 y^-j z]` is nonzero for `t < j`, and `y^j`, `x`, `z` kill `[x^-1 y^-j z]`.
pub fn verify_basis(spec: &RdpSpec, alt: bool, j: u32) -> Result<CheckReport, CohError> {
    let admissible = j == 1
        || (spec.p == 2 && spec.dynkin.family == Family::D && j < spec.m())
        || (spec.p == 2 && spec.dynkin == Dynkin::e(8) && j == 2);
    if !admissible || j == 0 {
        return Err(CohError::Hypothesis(format!("j = {j} is not admissible for {spec}")));
    }
    let chart = rdp_chart(spec, alt)?;
    let e = CohClass::of_supported(&eps(&chart, j as i32, 1), 1, 0);
    let mono = |i: i32, jj: i32, c: u8| ChartElem::monomial(&chart.ring, i, jj, c, 1);
    let mut rep = CheckReport::new(
        CheckKind::Basis,
        format!("basis:{}:j{j}", chart.key()),
        &e,
        &e,
        &CohClass::zero(&chart.ring, 1),
    );
    let mut nonzero = Vec::new();
    for t in 0..j {
        let c = scalar_mul_class(&mono(0, t as i32, 0), &e)?;
        rep.require(!c.is_zero(), format!("[y^{t} e] vanishes"));
        nonzero.push(c.to_string());
    }
    for (name, g) in [("x", mono(1, 0, 0)), ("y^j", mono(0, j as i32, 0)), ("z", chart.z())] {
        rep.require(scalar_mul_class(&g, &e)?.is_zero(), format!("[{name} e] is nonzero"));
    }
    rep.computed = format!("nonzero: {}", nonzero.join(", "));
    rep.predicted = format!("{j} nonzero classes; x, y^{j}, z annihilate");
    Ok(rep)
}

/// One parameter point of the sweep.
#[derive(Clone, Debug)]
pub enum CheckParams {
    FrobD { spec: RdpSpec, alt: bool, n: u32, j: u32 },
    FrobE8I2 { r: u32 },
    FrobE { spec: RdpSpec, n: u32 },
    Quotient(QuotientCase),
    Basis { spec: RdpSpec, alt: bool, j: u32 },
}

impl CheckParams {
    pub fn kind(&self) -> CheckKind {
        match self {
            CheckParams::FrobD { .. } => CheckKind::FrobD,
            CheckParams::FrobE8I2 { .. } => CheckKind::FrobE8I2,
            CheckParams::FrobE { .. } => CheckKind::FrobE,
            CheckParams::Quotient(_) => CheckKind::Quotient,
            CheckParams::Basis { .. } => CheckKind::Basis,
        }
    }

    pub fn run(&self) -> Result<CheckReport, CohError> {
        match self {
            CheckParams::FrobD { spec, alt, n, j } => verify_frob_d(spec, *alt, *n, *j),
            CheckParams::FrobE8I2 { r } => verify_frob_e8_i2(*r),
            CheckParams::FrobE { spec, n } => verify_frob_e(spec, *n),
            CheckParams::Quotient(c) => verify_quotient(*c),
            CheckParams::Basis { spec, alt, j } => verify_basis(spec, *alt, *j),
        }
    }
}

fn d_variants(spec: RdpSpec) -> Vec<bool> {
    if spec.r == 0 {
        vec![false, true]
    } else {
        vec![false]
    }
}

/// Every admissible parameter point with `N <= max_n`.
pub fn admissible_grid(max_n: u32) -> Vec<CheckParams> {
    let mut out = Vec::new();
    for (p, s) in non_taut_types(max_n) {
        for r in 0..=rmax(p, s) {
            let spec = RdpSpec::new(p, s, r).expect("r <= rmax");
            if s.family == Family::D {
                for alt in d_variants(spec) {
                    for n in 1..=4 {
                        for j in 1..spec.m() {
                            if frob_d_admissible(&spec, n, j).is_ok() {
                                out.push(CheckParams::FrobD { spec, alt, n, j });
                            }
                        }
                    }
                    for j in 1..spec.m() {
                        out.push(CheckParams::Basis { spec, alt, j });
                    }
                }
            } else {
                if let Some(nmax) = frob_e_max_length(p, s) {
                    for n in 1..=nmax {
                        if r as i64 <= rmax(p, s) as i64 + 1 - n as i64 {
                            out.push(CheckParams::FrobE { spec, n });
                        }
                    }
                }
                out.push(CheckParams::Basis { spec, alt: false, j: 1 });
                if p == 2 && s == Dynkin::e(8) {
                    out.push(CheckParams::Basis { spec, alt: false, j: 2 });
                }
            }
        }
    }
    out.extend((0..=1).map(|r| CheckParams::FrobE8I2 { r }));
    out.extend(QuotientCase::all().into_iter().map(CheckParams::Quotient));
    out
}

/// Run the grid in parallel. Errors become failing reports.
pub fn verify_all(max_n: u32) -> Vec<CheckReport> {
    admissible_grid(max_n)
        .into_par_iter()
        .map(|params| {
            params.run().unwrap_or_else(|err| CheckReport {
                kind: params.kind(),
                id: format!("{params:?}"),
                input: String::new(),
                computed: String::new(),
                predicted: String::new(),
                failures: vec![err.to_string()],
                pass: false,
            })
        })
        .collect()
}
