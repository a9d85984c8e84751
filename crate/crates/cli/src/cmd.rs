use std::error::Error;
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use rdpk3::chartring::{quotient_map_chart, rdp_chart_from_key, table_entries, ChartElem, QuotientCase, RdpChart};
use rdpk3::dynkin::{Family, RdpSpec};
use rdpk3::ffpoly::{identifiers, parse_poly, var_names, FpPoly, PrimeField};
use rdpk3::height::{
    count_points, etale_quotient_height, height_from_rdp, height_gt_test, ordinary_test, quotient_height,
    rdp_realizable_on_k3, GroupScheme, PolySpec, SingConfig, SurfaceModel,
};
use rdpk3::lattice::{dynkin_gram, glue, unimodular_overlattice_exists, DiscForm, GlueSpec, GramLattice};
use rdpk3::localcoh::verify::{
    admissible_grid, verify_all, verify_basis, verify_frob_d, verify_frob_e, verify_frob_e8_i2, verify_quotient,
    CheckKind, CheckReport,
};
use rdpk3::localcoh::{frobenius_class, CohClass};
use rdpk3::reproduce::{reproduce as run_suite, Options, Status};
use rdpk3::witt::{witt_table, WittOp, WittVec};

use crate::{ChartCmd, CmdResult, CohCmd, HeightCmd, LatticeCmd, LatticeInput, Outcome, ReproduceArgs, WittCmd};

type Res<T> = Result<T, Box<dyn Error>>;

fn fail(msg: impl Into<String>) -> Box<dyn Error> {
    msg.into().into()
}

/// Split "(a, b, c)" into its components.
fn split_tuple(s: &str) -> Res<Vec<String>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| fail(format!("expected a parenthesized tuple, got {s:?}")))?;
    let parts: Vec<String> = inner.split(',').map(|c| c.trim().to_string()).collect();
    if parts.iter().any(String::is_empty) {
        return Err(fail(format!("empty component in {s:?}")));
    }
    Ok(parts)
}

fn polys_json(vars: &[String], polys: &[FpPoly]) -> Value {
    json!({ "vars": vars, "polys": polys.iter().map(ToString::to_string).collect::<Vec<_>>() })
}

pub fn witt(c: WittCmd) -> CmdResult {
    match c {
        WittCmd::Table { p, n, op } => {
            let table = witt_table(p, n)?;
            let ops: Vec<WittOp> = match op {
                Some(name) => vec![WittOp::ALL
                    .into_iter()
                    .find(|o| o.name() == name)
                    .ok_or_else(|| fail(format!("unknown operation {name:?}")))?],
                None => WittOp::ALL.to_vec(),
            };
            let mut result = json!({ "p": p, "n": n });
            let mut text = String::new();
            for o in ops {
                let vars = if o == WittOp::Negation { table.unary_vars() } else { table.binary_vars() };
                let polys = table.polys(o);
                result[o.name()] = polys_json(vars, polys);
                writeln!(text, "{} (p = {p}):", o.name())?;
                for (i, f) in polys.iter().enumerate() {
                    writeln!(text, "  {i}: {f}")?;
                }
            }
            Ok(Outcome::ok(result, text))
        }
        WittCmd::Eval { p, n, op, lhs, rhs } => {
            let lc = split_tuple(&lhs)?;
            let rc = rhs.as_deref().map(split_tuple).transpose()?;
            let mut names: Vec<String> = Vec::new();
            for s in lc.iter().chain(rc.iter().flatten()) {
                names.extend(identifiers(s)?);
            }
            names.sort();
            names.dedup();
            let vars = var_names(&names);
            let field = PrimeField::new(p);
            let parse = |cs: &[String]| -> Res<WittVec<FpPoly>> {
                let comps = cs.iter().map(|s| parse_poly(field, vars.clone(), s)).collect::<Result<Vec<_>, _>>()?;
                Ok(WittVec::new(comps)?)
            };
            let a = parse(&lc)?;
            if let Some(n) = n {
                if a.len() != n {
                    return Err(fail(format!("lhs has length {}, expected {n}", a.len())));
                }
            }
            let b = rc.as_deref().map(parse).transpose()?;
            let need = |b: Option<WittVec<FpPoly>>| b.ok_or_else(|| fail(format!("{op} needs --rhs")));
            let out = match op.as_str() {
                "add" => a.try_add(&need(b)?)?,
                "sub" => a.try_sub(&need(b)?)?,
                "mul" => a.try_mul(&need(b)?)?,
                "neg" => a.neg(),
                "frob" => a.frobenius(),
                "ver" => a.verschiebung(),
                "res" => a.restriction()?,
                _ => return Err(fail(format!("unknown operation {op:?}"))),
            };
            let comps: Vec<String> = out.components().iter().map(ToString::to_string).collect();
            let text = format!("{out}\n");
            Ok(Outcome::ok(json!({ "p": p, "op": op, "vars": names, "components": comps }), text))
        }
    }
}

fn rdp_chart_json(c: &RdpChart) -> Value {
    json!({
        "key": c.key(),
        "p": c.spec.p,
        "dynkin": c.spec.dynkin.to_string(),
        "coindex": c.spec.r,
        "alt": c.alt,
        "equation": c.equation,
        "relation": c.ring.relation_string(),
        "sign": format!("{:?}", c.sign),
        "x": c.x().to_string(),
        "y": c.y().to_string(),
        "z": c.z().to_string(),
        "epsilon": c.epsilon(1).to_string(),
    })
}

pub fn chart(c: ChartCmd) -> CmdResult {
    match c {
        ChartCmd::Show { key } => {
            if key.starts_with("quot:") {
                let case: QuotientCase = key.parse()?;
                let q = quotient_map_chart(case)?;
                let images: Vec<String> = [Some(q.map.image_u()), Some(q.map.image_v()), q.map.image_w().cloned()]
                    .into_iter()
                    .flatten()
                    .map(|e| e.to_string())
                    .collect();
                let result = json!({
                    "key": case.to_string(),
                    "p": case.p(),
                    "group": case.group(),
                    "source": q.source.relation_string(),
                    "target": q.target.relation_string(),
                    "images": images,
                    "n": q.n,
                    "epsilon": q.epsilon.to_string(),
                    "expected": q.expected.to_string(),
                });
                let text = format!(
                    "{case}\n  source:  {}\n  target:  {}\n  map:     ({})\n  epsilon: {}\n  pullback to W_{}: V^{}[{}]\n",
                    q.source.relation_string(),
                    q.target.relation_string(),
                    images.join(", "),
                    q.epsilon,
                    q.n,
                    q.n - 1,
                    q.expected
                );
                return Ok(Outcome::ok(result, text));
            }
            let c = rdp_chart_from_key(&key)?;
            let text = format!(
                "{} over F_{}\n  equation: {} = 0\n  relation: {}\n  epsilon:  {}\n",
                c.key(),
                c.spec.p,
                c.equation,
                c.ring.relation_string(),
                c.epsilon(1)
            );
            Ok(Outcome::ok(rdp_chart_json(&c), text))
        }
        ChartCmd::List { max_n } => {
            let keys: Vec<String> = table_entries(max_n)
                .into_iter()
                .map(|(s, alt)| if alt { format!("{s}:alt") } else { s.to_string() })
                .collect();
            let text = keys.iter().map(|k| format!("{k}\n")).collect();
            Ok(Outcome::ok(json!({ "keys": keys }), text))
        }
    }
}

fn report_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{} {}\n  e:         {}\n  computed:  {}\n  predicted: {}\n",
        if r.pass { "PASS" } else { "FAIL" },
        r.id,
        r.input,
        r.computed,
        r.predicted
    );
    for f in &r.failures {
        let _ = writeln!(s, "  failure: {f}");
    }
    s
}

fn reports_outcome(reports: Vec<CheckReport>) -> CmdResult {
    let ok = reports.iter().all(|r| r.pass);
    let mut text: String = reports.iter().map(report_text).collect();
    if reports.len() > 1 {
        let passed = reports.iter().filter(|r| r.pass).count();
        writeln!(text, "{passed}/{} passed", reports.len())?;
    }
    Ok(Outcome { result: serde_json::to_value(&reports)?, text, ok })
}

fn spec_of(key: &str) -> Res<(RdpSpec, bool)> {
    let c = rdp_chart_from_key(key)?;
    Ok((c.spec, c.alt))
}

pub fn localcoh(c: CohCmd) -> CmdResult {
    match c {
        CohCmd::Reduce { chart, vec } => {
            let c = rdp_chart_from_key(&chart)?;
            let comps =
                split_tuple(&vec)?.iter().map(|s| ChartElem::parse(&c.ring, s)).collect::<Result<Vec<_>, _>>()?;
            let e = CohClass::of(&c.ring, comps)?;
            let result = json!({ "chart": c.key(), "class": e.to_string(), "zero": e.is_zero() });
            Ok(Outcome::ok(result, format!("{e}\n")))
        }
        CohCmd::Frob { chart, n, j } => {
            let c = rdp_chart_from_key(&chart)?;
            // a matching check supplies the prediction when its hypotheses hold
            let checked = match (c.spec.dynkin.family, c.spec.p, c.spec.dynkin.n, j) {
                (Family::D, _, _, _) => verify_frob_d(&c.spec, c.alt, n as u32, j),
                (Family::E, 2, 8, 2) if n == 1 => verify_frob_e8_i2(c.spec.r),
                (Family::E, _, _, 1) => verify_frob_e(&c.spec, n as u32),
                _ => Err(rdpk3::localcoh::CohError::Hypothesis("no closed form for this type and j".into())),
            };
            let reason = match checked {
                Ok(r) => return reports_outcome(vec![r]),
                Err(e) => e.to_string(),
            };
            if n == 0 || j == 0 {
                return Err(fail("n and j must be positive"));
            }
            let eps = ChartElem::monomial(&Arc::clone(&c.ring), -1, -(j as i32), 1, 1);
            let e = CohClass::of_supported(&eps, n, 0);
            let fe = frobenius_class(&e);
            let result = json!({
                "chart": c.key(), "input": e.to_string(), "computed": fe.to_string(), "predicted": null, "note": reason,
            });
            Ok(Outcome::ok(result, format!("  e:        {e}\n  computed: {fe}\n  no prediction: {reason}\n")))
        }
        CohCmd::Verify { check, chart, n, j, r, case, param, all, max_n } => {
            if all {
                let kind = check.as_deref().map(str::parse::<CheckKind>).transpose()?;
                let reports = match kind {
                    None => verify_all(max_n),
                    Some(k) => admissible_grid(max_n)
                        .into_iter()
                        .filter(|c| c.kind() == k)
                        .map(|c| c.run())
                        .collect::<Result<_, _>>()?,
                };
                return reports_outcome(reports);
            }
            let kind: CheckKind = check.as_deref().unwrap_or_default().parse()?;
            let need_chart = || chart.as_deref().ok_or_else(|| fail(format!("{} needs --chart", kind.name())));
            let report = match kind {
                CheckKind::FrobD => {
                    let (spec, alt) = spec_of(need_chart()?)?;
                    verify_frob_d(&spec, alt, n.unwrap_or(1), j.unwrap_or(1))?
                }
                CheckKind::FrobE8I2 => verify_frob_e8_i2(r.unwrap_or(1))?,
                CheckKind::FrobE => {
                    let (spec, _) = spec_of(need_chart()?)?;
                    verify_frob_e(&spec, n.unwrap_or(1))?
                }
                CheckKind::Quotient => {
                    let key = case.ok_or_else(|| fail("quotient needs --case"))?;
                    let qc = match key.parse::<u32>() {
                        Ok(i) => QuotientCase::from_index(i, param)?,
                        Err(_) => key.parse()?,
                    };
                    verify_quotient(qc)?
                }
                CheckKind::Basis => {
                    let (spec, alt) = spec_of(need_chart()?)?;
                    verify_basis(&spec, alt, j.unwrap_or(1))?
                }
            };
            reports_outcome(vec![report])
        }
    }
}

pub fn height(c: HeightCmd) -> CmdResult {
    match c {
        HeightCmd::FromRdp { key } => {
            let spec = RdpSpec::parse_key(&key)?;
            let real = rdp_realizable_on_k3(&spec);
            let h = if spec.is_taut() { None } else { height_from_rdp(&spec).ok() };
            let mut text = String::new();
            match h {
                Some(h) => writeln!(text, "{spec}: height {h}")?,
                None if spec.is_taut() => writeln!(text, "{spec}: taut, no height constraint")?,
                None => writeln!(text, "{spec}: excluded")?,
            }
            writeln!(text, "realizable on a K3: {} ({})", real.realizable, real.reason)?;
            let result = json!({ "rdp": spec.to_string(), "height": h, "realizability": real });
            Ok(Outcome::ok(result, text))
        }
        HeightCmd::Count { model, q } => {
            let m: SurfaceModel = serde_json::from_str(&std::fs::read_to_string(&model)?)?;
            m.validate()?;
            if q.is_empty() {
                return Err(fail("--q needs at least one field size"));
            }
            let counts = q.iter().map(|&qi| count_points(&m, qi)).collect::<Result<Vec<_>, _>>()?;
            let mut text: String = q.iter().zip(&counts).map(|(qi, c)| format!("#Y(F_{qi}) = {c}\n")).collect();
            let tower = q.iter().enumerate().all(|(i, &qi)| Some(qi as u64) == (q[0] as u64).checked_pow(i as u32 + 1));
            let test = tower.then(|| height_gt_test(&counts, q[0] as u64));
            if let Some(t) = &test {
                for (i, gt) in t.gt.iter().enumerate() {
                    writeln!(text, "height > {}: {gt}", i + 1)?;
                }
                if let Some(h) = t.height {
                    writeln!(text, "height = {h}")?;
                }
            }
            Ok(Outcome::ok(json!({ "q": q, "counts": counts, "height_test": test }), text))
        }
        HeightCmd::Ordinary { weights, p, f, vars } => {
            let vars = vars.unwrap_or_else(|| ["x", "y", "z", "w"].map(String::from).to_vec());
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            let w: [u64; 4] = weights.try_into().map_err(|_| fail("need exactly four weights"))?;
            let model =
                SurfaceModel::WeightedHypersurface { characteristic: p, weights: w, f: PolySpec::new(&names, &f) };
            model.validate()?;
            let ordinary = ordinary_test(&model)?;
            let text = format!("{}\n", if ordinary { "ordinary" } else { "not ordinary" });
            Ok(Outcome::ok(json!({ "ordinary": ordinary }), text))
        }
        HeightCmd::Quotient { group, p, sing } => {
            let config = SingConfig::parse(p, &sing)?;
            let h = if group.eq_ignore_ascii_case("etale") {
                etale_quotient_height(p, &config)?
            } else {
                quotient_height(group.parse::<GroupScheme>()?, p, &config)?
            };
            let text = format!("height of the {group} quotient with Sing = {config}: {h}\n");
            Ok(Outcome::ok(json!({ "group": group, "p": p, "sing": config.to_string(), "height": h }), text))
        }
    }
}

fn lattice_of(input: &LatticeInput) -> Res<GramLattice> {
    match (&input.gram, &input.dynkin) {
        (Some(g), _) => Ok(GramLattice::parse(g)?),
        (None, Some(d)) => Ok(dynkin_gram(d.parse()?)),
        (None, None) => Err(fail("need --gram or --dynkin")),
    }
}

pub fn lattice(c: LatticeCmd) -> CmdResult {
    match c {
        LatticeCmd::Disc(input) => {
            let l = lattice_of(&input)?;
            let d = DiscForm::new(&l)?;
            let k = d.orders().len();
            let unit = |i: usize| (0..k).map(|j| u64::from(i == j)).collect::<Vec<u64>>();
            let q: Vec<String> =
                (0..k).map(|i| d.q_value(&unit(i)).map(|v| v.to_string())).collect::<Result<_, _>>()?;
            let b: Vec<Vec<String>> = (0..k)
                .map(|i| (0..k).map(|j| d.b_value(&unit(i), &unit(j)).map(|v| v.to_string())).collect())
                .collect::<Result<_, _>>()?;
            let sig = l.signature()?;
            let gens: Vec<Vec<String>> =
                d.generators().iter().map(|g| g.iter().map(ToString::to_string).collect()).collect();
            let mut text = format!(
                "rank {}, det {}, signature {:?}, {}\nL*/L = {}\n",
                l.rank(),
                l.det(),
                sig,
                if l.is_even() { "even" } else { "odd" },
                if k == 0 {
                    "0".to_string()
                } else {
                    d.orders().iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" + ")
                }
            );
            for i in 0..k {
                writeln!(text, "  g{i} = ({}): q = {} mod {}", gens[i].join(", "), q[i], d.q_modulus())?;
            }
            let result = json!({
                "rank": l.rank(), "det": l.det().to_string(), "signature": sig, "even": l.is_even(),
                "orders": d.orders(), "generators": gens, "q": q, "q_modulus": d.q_modulus(), "b": b,
            });
            Ok(Outcome::ok(result, text))
        }
        LatticeCmd::Glue { spec } => {
            let s: GlueSpec = serde_json::from_str(&std::fs::read_to_string(&spec)?)?;
            let g = glue(&s)?;
            let text = format!(
                "index {}, signature {:?}, det {}, {}\nL*/L = {:?}\npair norms: {}\n{}\n",
                g.index,
                g.signature,
                g.det,
                if g.even { "even" } else { "odd" },
                g.disc_orders,
                g.pair_norms.join(", "),
                g.lattice
            );
            Ok(Outcome::ok(serde_json::to_value(&g)?, text))
        }
        LatticeCmd::Overlattice(input) => {
            let l = lattice_of(&input)?;
            let o = unimodular_overlattice_exists(&l)?;
            let mut text = format!(
                "|L*/L| = {}: {}\n",
                o.disc_order,
                if o.exists { "unimodular overlattice exists" } else { "no unimodular overlattice" }
            );
            if let Some(w) = &o.witness {
                writeln!(text, "witness: {w}")?;
            }
            Ok(Outcome::ok(serde_json::to_value(&o)?, text))
        }
    }
}

pub fn reproduce(a: ReproduceArgs, seed: u64) -> CmdResult {
    let mut opts = Options { seed, only: a.only, max_n: a.max_n, ..Options::default() };
    if a.quick {
        opts.canonicity_trials = 50;
        opts.axiom_trials = 50;
        opts.projection_trials = 50;
    }
    let report = run_suite("reproduce", &opts);
    let mut text = String::new();
    for r in &report.records {
        let tag = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        writeln!(text, "{tag} {}", r.id)?;
        if r.status == Status::Fail {
            writeln!(text, "     computed: {}\n     expected: {}", r.computed, r.expected)?;
        }
    }
    writeln!(
        text,
        "{} passed, {} failed, {} skipped in {} ms",
        report.passed, report.failed, report.skipped, report.wall_time_ms
    )?;
    let ok = report.all_pass();
    Ok(Outcome { result: serde_json::to_value(&report)?, text, ok })
}
