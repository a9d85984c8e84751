//! The reproduction driver: every checkable computation in one report.

use std::time::Instant;

use serde::Serialize;

use crate::chartring::non_taut_types;
use crate::dynkin::{rmax, Dynkin, Family, RdpSpec};
use crate::height::{
    count_points, etale_quotient_height, etale_table, height_from_rdp, height_gt_test, ordinary_test, HeightError,
    HeightValue, PolySpec, SurfaceModel,
};
use crate::lattice::{
    dynkin_gram, glue, unimodular_overlattice_exists, GluePair, GlueSpec, GramLattice, LatticeSource, GUARD,
};
use crate::localcoh::props::canonicity_suite;
use crate::localcoh::verify::{admissible_grid, CheckKind, CheckReport};
use crate::witt::identities::subtraction_identities;
use crate::witt::props::{check_projection_formula, check_ring_axioms, projection_shapes, PropOutcome, SUPPORTED};
use crate::witt::witt_table;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    /// What the check is pinned to, or `"plumbing"`.
    pub anchor: String,
}

impl CheckRecord {
    fn new(
        id: impl Into<String>,
        pass: bool,
        computed: impl Into<String>,
        expected: impl Into<String>,
        anchor: &str,
    ) -> Self {
        CheckRecord {
            id: id.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            computed: computed.into(),
            expected: expected.into(),
            anchor: anchor.to_string(),
        }
    }
}

/// Groups of checks; `--only` selects by group name or id prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    WittGhost,
    WittIdentities,
    FrobD,
    FrobE8I2,
    FrobE,
    Quotient,
    Basis,
    HeightTable,
    PointCount,
    Ordinarity,
    Glue,
    Overlattice,
    Properties,
}

impl Group {
    pub const ALL: [Group; 13] = [
        Group::WittGhost,
        Group::WittIdentities,
        Group::FrobD,
        Group::FrobE8I2,
        Group::FrobE,
        Group::Quotient,
        Group::Basis,
        Group::HeightTable,
        Group::PointCount,
        Group::Ordinarity,
        Group::Glue,
        Group::Overlattice,
        Group::Properties,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Group::WittGhost => "witt-ghost",
            Group::WittIdentities => "witt-identities",
            Group::FrobD => "frob-d",
            Group::FrobE8I2 => "frob-e8-i2",
            Group::FrobE => "frob-e",
            Group::Quotient => "quotient",
            Group::Basis => "basis",
            Group::HeightTable => "height-table",
            Group::PointCount => "point-count",
            Group::Ordinarity => "ordinarity",
            Group::Glue => "glue",
            Group::Overlattice => "overlattice",
            Group::Properties => "props",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Group names or id prefixes; empty runs everything.
    pub only: Vec<String>,
    pub max_n: u32,
    pub canonicity_trials: usize,
    pub axiom_trials: usize,
    pub projection_trials: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            only: Vec::new(),
            max_n: 21,
            canonicity_trials: 1000,
            axiom_trials: 1000,
            projection_trials: 500,
        }
    }
}

impl Options {
    fn selects_group(&self, g: Group) -> bool {
        self.only.is_empty() || self.only.iter().any(|o| o.starts_with(g.name()) || g.name().starts_with(o.as_str()))
    }

    fn selects_id(&self, id: &str) -> bool {
        self.only.is_empty()
            || self.only.iter().any(|o| {
                if Group::ALL.iter().any(|g| g.name() == o) {
                    group_of(id) == o
                } else {
                    id.starts_with(o.as_str())
                }
            })
    }
}

fn group_of(id: &str) -> &str {
    Group::ALL.iter().map(|g| g.name()).filter(|n| id.starts_with(n)).max_by_key(|n| n.len()).unwrap_or(id)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Run the selected groups; records are sorted by id.
pub fn reproduce(command: &str, opts: &Options) -> RunReport {
    let start = Instant::now();
    let mut records: Vec<CheckRecord> = Vec::new();
    for g in Group::ALL {
        if opts.selects_group(g) {
            records.extend(run_group(g, opts).into_iter().filter(|r| opts.selects_id(&r.id)));
        }
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    RunReport {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        seed: opts.seed,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        records,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

pub fn run_group(g: Group, opts: &Options) -> Vec<CheckRecord> {
    match g {
        Group::WittGhost => witt_ghost(),
        Group::WittIdentities => witt_identities(),
        Group::FrobD => localcoh(CheckKind::FrobD, opts.max_n),
        Group::FrobE8I2 => localcoh(CheckKind::FrobE8I2, opts.max_n),
        Group::FrobE => localcoh(CheckKind::FrobE, opts.max_n),
        Group::Quotient => localcoh(CheckKind::Quotient, opts.max_n),
        Group::Basis => localcoh(CheckKind::Basis, opts.max_n),
        Group::HeightTable => height_table(opts.max_n),
        Group::PointCount => point_count(),
        Group::Ordinarity => ordinarity(),
        Group::Glue => glue_a20(),
        Group::Overlattice => overlattice(),
        Group::Properties => properties(opts),
    }
}

fn witt_ghost() -> Vec<CheckRecord> {
    SUPPORTED
        .iter()
        .map(|&(p, n)| {
            let id = format!("witt-ghost:p{p}:n{n}");
            let anchor = "w_k(S(a, b)) = w_k(a) + w_k(b), w_k(P(a, b)) = w_k(a) w_k(b) over Z";
            match witt_table(p, n) {
                Ok(t) => match t.check_ghost_compatibility() {
                    Ok(()) => CheckRecord::new(id, true, "all ghost components agree", "identical over Z", anchor),
                    Err((op, k)) => {
                        CheckRecord::new(id, false, format!("{op:?} fails at ghost {k}"), "identical over Z", anchor)
                    }
                },
                Err(e) => CheckRecord::new(id, false, e.to_string(), "table builds", anchor),
            }
        })
        .collect()
}

fn witt_identities() -> Vec<CheckRecord> {
    subtraction_identities()
        .into_iter()
        .map(|c| {
            CheckRecord::new(
                format!("witt-identities:{}", c.id),
                c.pass,
                c.computed,
                c.expected,
                "closed-form Witt subtraction",
            )
        })
        .collect()
}

fn localcoh_anchor(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::FrobD => "F(e) = 0 if a >= 0, V^{n-1}[x^-1 y^a z] if a < 0",
        CheckKind::FrobE8I2 => "F[x^-1 y^-2 z] = [x^-1 y^-1 z] on E8^1, 0 on E8^0",
        CheckKind::FrobE => "F(e) = 0 below r = r_max + 1 - n, unit * V^{n-1}(e) at it",
        CheckKind::Quotient => "pi^*(e) = V^{n-1}(e'), e' a generator",
        CheckKind::Basis => "plumbing",
    }
}

fn from_report(r: CheckReport) -> CheckRecord {
    let computed =
        if r.failures.is_empty() { r.computed } else { format!("{} [{}]", r.computed, r.failures.join("; ")) };
    CheckRecord::new(r.id, r.pass, computed, r.predicted, localcoh_anchor(r.kind))
}

/// Every admissible parameter point of one kind.
pub fn localcoh(kind: CheckKind, max_n: u32) -> Vec<CheckRecord> {
    use rayon::prelude::*;
    admissible_grid(max_n)
        .into_par_iter()
        .filter(|params| params.kind() == kind)
        .map(|params| match params.run() {
            Ok(r) => from_report(r),
            Err(e) => CheckRecord::new(
                format!("{}:{params:?}", kind.name()),
                false,
                e.to_string(),
                "runs",
                localcoh_anchor(kind),
            ),
        })
        .collect()
}

/// Excluded set stated independently of the height sequences.
fn expected_excluded(spec: &RdpSpec) -> bool {
    (spec.p == 2 && spec.dynkin.family == Family::D && spec.r > 0 && ![1, 2, 4].contains(&(spec.dynkin.n / 2 - spec.r)))
        || (spec.p == 2 && spec.dynkin == Dynkin::e(8) && spec.r == 1)
}

/// Injectivity of the height map on positive coindices, exactness of the
/// excluded set, and agreement of the etale quotient table.
pub fn height_table(max_n: u32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for (p, s) in non_taut_types(max_n) {
        let mut heights: Vec<(u32, HeightValue)> = Vec::new();
        let mut excluded_got = Vec::new();
        let mut excluded_want = Vec::new();
        let mut errors = Vec::new();
        for r in 0..=rmax(p, s) {
            let spec = RdpSpec::new(p, s, r).expect("r <= rmax");
            if expected_excluded(&spec) {
                excluded_want.push(r);
            }
            match height_from_rdp(&spec) {
                Ok(h) if r > 0 => heights.push((r, h)),
                Ok(_) => {}
                Err(HeightError::DoesNotOccur(_)) => excluded_got.push(r),
                Err(e) => errors.push(e.to_string()),
            }
        }
        let mut distinct: Vec<HeightValue> = heights.iter().map(|(_, h)| *h).collect();
        distinct.sort_by_key(|h| h.to_string());
        distinct.dedup();
        let injective = distinct.len() == heights.len();
        let shown: Vec<String> = heights.iter().map(|(r, h)| format!("r={r}: {h}")).collect();
        out.push(CheckRecord::new(
            format!("height-table:{p}:{s}"),
            injective && excluded_got == excluded_want && errors.is_empty(),
            format!(
                "{}; excluded r = {excluded_got:?}{}",
                shown.join(", "),
                if errors.is_empty() { String::new() } else { format!("; {}", errors.join("; ")) }
            ),
            format!("injective; excluded r = {excluded_want:?}"),
            "height h <-> coindex r_h; D_N^r (m - r not in {1,2,4}) and E8^1 do not occur",
        ));
    }
    for row in etale_table() {
        let from_rdp: Vec<String> = row
            .sing
            .0
            .iter()
            .map(|sp| height_from_rdp(sp).map(|h| h.to_string()).unwrap_or_else(|e| e.to_string()))
            .collect();
        let table = etale_quotient_height(row.p, &row.sing);
        let want = HeightValue::Finite(row.height).to_string();
        let pass = table.as_ref().is_ok_and(|h| h.to_string() == want) && from_rdp.iter().all(|h| *h == want);
        out.push(CheckRecord::new(
            format!("height-table:etale:{}:{}", row.p, row.sing),
            pass,
            format!(
                "table {}, from RDPs {}",
                table.map(|h| h.to_string()).unwrap_or_else(|e| e.to_string()),
                from_rdp.join(", ")
            ),
            want,
            "Z/pZ-quotient height agrees with the RDP coindex",
        ));
    }
    out
}

/// The characteristic-2 elliptic surface of height 3: the affine chart over
/// `t`, the fiber at `t = infinity`, and one zero-section point per fiber.
pub fn height3_surface() -> SurfaceModel {
    SurfaceModel::TwoChart {
        characteristic: 2,
        chart1: PolySpec::new(&["x", "y", "t"], "y^2 + y*x*t^2 + x^3 + t^5"),
        chart2_at_infinity: PolySpec::new(&["x", "y"], "y^2 + y*x + x^3"),
        points_at_infinity_per_fiber: 1,
    }
}

fn point_count() -> Vec<CheckRecord> {
    let model = height3_surface();
    let anchor = "#X(F_2), #X(F_4), #X(F_8) = 9, 25, 45; height 3";
    let mut counts = Vec::new();
    let mut out = Vec::new();
    for (q, want) in [(2u32, 9u64), (4, 25), (8, 45)] {
        let got = count_points(&model, q);
        let shown = got.as_ref().map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
        out.push(CheckRecord::new(format!("point-count:h3:q{q}"), got == Ok(want), shown, want.to_string(), anchor));
        counts.push(got.unwrap_or(0));
    }
    let t = height_gt_test(&counts, 2);
    out.push(CheckRecord::new(
        "point-count:h3:height",
        t.height == Some(3),
        format!("s = ({}), height {:?}", t.s.join(", "), t.height),
        "height 3",
        anchor,
    ));
    out
}

fn ordinarity() -> Vec<CheckRecord> {
    let hyper = |p: u32, w: [u64; 4], f: &str| SurfaceModel::WeightedHypersurface {
        characteristic: p,
        weights: w,
        f: PolySpec::new(&["x0", "x1", "x2", "x3"], f),
    };
    let cases = [
        ("fermat-p5", hyper(5, [1, 1, 1, 1], "x0^4 + x1^4 + x2^4 + x3^4"), true),
        ("fermat-p7", hyper(7, [1, 1, 1, 1], "x0^4 + x1^4 + x2^4 + x3^4"), false),
        ("fermat-p2-deformed", hyper(2, [1, 1, 1, 1], "x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3"), true),
        ("p6411-p2", hyper(2, [6, 4, 1, 1], "x0^2 + x0*x1*x2*x3 + x1^3 + x2^12 + x3^12"), true),
    ];
    cases
        .into_iter()
        .map(|(name, m, want)| {
            let got = ordinary_test(&m);
            CheckRecord::new(
                format!("ordinarity:{name}"),
                got == Ok(want),
                got.map(|b| b.to_string()).unwrap_or_else(|e| e.to_string()),
                want.to_string(),
                "height 1 iff (x0 x1 x2 x3)^{p-1} appears in f^{p-1}",
            )
        })
        .collect()
}

/// `A_20` glued to `[[2,5],[5,2]]` along `l -> t` of order 7, `p = 3`.
pub fn a20_glue_spec() -> GlueSpec {
    GlueSpec {
        l: LatticeSource::Dynkin { dynkin: "A20".into() },
        t: LatticeSource::Gram { gram: GramLattice::new(vec![vec![2, 5], vec![5, 2]]).expect("nondegenerate") },
        p: 3,
        pairs: vec![GluePair { l: (1..=20).map(|i| format!("{i}/7")).collect(), t: vec!["4/7".into(), "4/7".into()] }],
    }
}

fn glue_a20() -> Vec<CheckRecord> {
    let anchor = "A20 + T glued at p = 3";
    match glue(&a20_glue_spec()) {
        Ok(o) => vec![
            CheckRecord::new("glue:a20:even", o.even, o.even.to_string(), "true", anchor),
            CheckRecord::new(
                "glue:a20:signature",
                o.signature == (1, 21),
                format!("{:?}", o.signature),
                "(1, 21)",
                anchor,
            ),
            CheckRecord::new(
                "glue:a20:disc",
                o.disc_orders == [3, 3],
                format!("{:?}", o.disc_orders),
                "[3, 3]",
                anchor,
            ),
            CheckRecord::new("glue:a20:norm", o.pair_norms == ["-4"], o.pair_norms.join(", "), "-4", anchor),
            CheckRecord::new("glue:a20:index", o.index == 7, o.index.to_string(), "7", anchor),
        ],
        Err(e) => vec![CheckRecord::new("glue:a20", false, e.to_string(), "glue succeeds", anchor)],
    }
}

/// Reduced positive definite binary forms `[[a,b],[b,c]]` of determinant `disc`.
pub fn binary_forms(disc: i64) -> Vec<GramLattice> {
    let mut out = Vec::new();
    for a in 1..=disc {
        for b in -a..=a {
            if 4 * b * b > a * a || (disc + b * b) % a != 0 {
                continue;
            }
            let c = (disc + b * b) / a;
            if c >= a {
                out.push(GramLattice::new(vec![vec![a, b], vec![b, c]]).expect("definite"));
            }
        }
    }
    out
}

/// `L1 + [n^2 d0] + L3` with `disc(L1) = -4^x` and `disc(L3) = k^2 d0`,
/// within the search guard.
pub fn obstruction_family(d0: i64) -> Vec<GramLattice> {
    let l1s = [
        (GramLattice::new(vec![vec![-4]]).expect("rank 1"), 4u64),
        (dynkin_gram(Dynkin::d(5)), 4),
        (GramLattice::new(vec![vec![-16]]).expect("rank 1"), 16),
    ];
    let mut out = Vec::new();
    for (l1, four_x) in &l1s {
        for n in 1..=2i64 {
            for k in 1..=2i64 {
                if four_x * (n * n * d0 * k * k * d0) as u64 > GUARD {
                    continue;
                }
                let l2 = GramLattice::new(vec![vec![n * n * d0]]).expect("rank 1");
                out.extend(binary_forms(k * k * d0).iter().map(|l3| l1.direct_sum(&l2).direct_sum(l3)));
            }
        }
    }
    out
}

fn overlattice() -> Vec<CheckRecord> {
    let anchor = "no unimodular overlattice when d0 = -1 mod 8";
    let g = |rows: Vec<Vec<i64>>| GramLattice::new(rows).expect("nondegenerate");
    let mut out = Vec::new();
    let inst = g(vec![vec![-4]]).direct_sum(&g(vec![vec![7]])).direct_sum(&g(vec![vec![2, 1], vec![1, 4]]));
    let show = |r: &Result<crate::lattice::Overlattice, _>| match r {
        Ok(o) => format!("exists = {} (|disc| = {}, {} subgroups visited)", o.exists, o.disc_order, o.visited),
        Err(e) => format!("{e}"),
    };
    let r = unimodular_overlattice_exists(&inst);
    out.push(CheckRecord::new(
        "overlattice:instance",
        r.as_ref().is_ok_and(|o| !o.exists),
        show(&r),
        "exists = false",
        anchor,
    ));
    let r = unimodular_overlattice_exists(&g(vec![vec![-2, 0], vec![0, 2]]));
    out.push(CheckRecord::new(
        "overlattice:control",
        r.as_ref().is_ok_and(|o| o.exists && o.witness.as_ref().is_some_and(GramLattice::is_unimodular)),
        show(&r),
        "exists = true",
        "plumbing",
    ));
    for d0 in [7, 15, 23] {
        let fam = obstruction_family(d0);
        let found: Vec<String> = fam
            .iter()
            .filter(|l| unimodular_overlattice_exists(l).map_or(true, |o| o.exists))
            .map(|l| l.to_string())
            .collect();
        out.push(CheckRecord::new(
            format!("overlattice:family:d0-{d0}"),
            found.is_empty() && !fam.is_empty(),
            format!(
                "{} of {} lattices admit one{}",
                found.len(),
                fam.len(),
                if found.is_empty() { String::new() } else { format!(": {}", found.join(" ")) }
            ),
            "0 admit one",
            anchor,
        ));
    }
    out
}

fn from_prop(o: PropOutcome, anchor: &str) -> CheckRecord {
    CheckRecord::new(
        format!("props:{}", o.name),
        o.pass(),
        if o.pass() { format!("{} trials, 0 failures", o.trials) } else { o.failures.join("; ") },
        format!("{} trials, 0 failures", o.trials),
        anchor,
    )
}

pub fn witt_axiom_records(trials: usize, seed: u64) -> Vec<CheckRecord> {
    SUPPORTED.iter().map(|&(p, n)| from_prop(check_ring_axioms(p, n, trials, seed), "plumbing")).collect()
}

pub fn projection_records(trials: usize, seed: u64) -> Vec<CheckRecord> {
    [2, 3, 5]
        .into_iter()
        .flat_map(|p| projection_shapes(p).into_iter().map(move |(n, m)| (p, n, m)))
        .map(|(p, n, m)| from_prop(check_projection_formula(p, n, m, trials, seed), "V^m(x) y = V^m(x F^m R^m(y))"))
        .collect()
}

pub fn canonicity_records(max_n: u32, trials: usize, seed: u64) -> Vec<CheckRecord> {
    canonicity_suite(max_n, trials, seed).into_iter().map(|o| from_prop(o, "plumbing")).collect()
}

fn properties(opts: &Options) -> Vec<CheckRecord> {
    let mut out = witt_axiom_records(opts.axiom_trials, opts.seed);
    out.extend(projection_records(opts.projection_trials, opts.seed));
    out.extend(canonicity_records(opts.max_n, opts.canonicity_trials, opts.seed));
    out
}
