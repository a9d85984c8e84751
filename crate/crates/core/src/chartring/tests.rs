use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::dynkin::{rmax, Dynkin, RdpSpec};
use crate::ffpoly::{parse_poly, var_names, FpPoly, PrimeField};
use crate::witt::FpAlgebra;

fn chart(key: &str) -> RdpChart {
    rdp_chart_from_key(key).unwrap()
}

fn el(c: &RdpChart, s: &str) -> ChartElem {
    ChartElem::parse(&c.ring, s).unwrap()
}

#[test]
fn w_squared_reduces_by_relation() {
    let c = chart("2:D8:0");
    assert_eq!(c.z().mul(&c.z()), el(&c, "x^2*y + x*y^4"));
    assert_eq!(c.ring.relation_string(), "z^2 = x*y^4 + x^2*y");
    let inv = el(&c, "x^-1");
    assert_eq!(inv.mul(&c.x()), ChartElem::one(&c.ring));
}

#[test]
fn epsilon_squared_e8() {
    let c = chart("2:E8:0");
    let eps = c.epsilon(1);
    assert_eq!(eps.mul(&eps), el(&c, "x*y^-2 + x^-2*y^3"));
    let c4 = chart("2:E8:4");
    let sq = c4.epsilon(1).mul(&c4.epsilon(1));
    assert_eq!(sq.residual(), c4.epsilon(1));
}

#[test]
fn split_examples() {
    let c = chart("2:D8:0");
    let (xi, eta, rho) = c.epsilon(1).split();
    assert!(xi.is_empty() && eta.is_empty());
    assert_eq!(rho, c.epsilon(1));
    let a = el(&c, "x^-1*y^2 + x^3*y^-1");
    let (xi, eta, rho) = a.split();
    assert_eq!(xi, el(&c, "x^-1*y^2"));
    assert_eq!(eta, el(&c, "x^3*y^-1"));
    assert!(rho.is_empty());
    let (xi, _, _) = el(&c, "x*y").split();
    assert_eq!(xi, el(&c, "x*y"));
}

#[test]
fn frobenius_map_on_d8() {
    let c = chart("2:D8:0");
    let f = RingMap::frobenius(&c.ring);
    assert_eq!(f.apply(&c.epsilon(1)).unwrap(), el(&c, "y^-1 + x^-1*y^2"));
    assert_eq!(FpAlgebra::frobenius(&c.epsilon(1)), el(&c, "y^-1 + x^-1*y^2"));
    let id = RingMap::identity(&c.ring);
    let a = el(&c, "x^-3*y^2*z + 1 + y^-1");
    assert_eq!(id.apply(&a).unwrap(), a);
}

#[test]
fn table_rows_as_listed() {
    assert_eq!(chart("2:D9:2").ring.relation_string(), "z^2 = (y^4 + x*y^2)*z + x^2*y");
    assert_eq!(chart("3:E8:1").ring.relation_string(), "z^2 = x^2*y^3 + y^5 + x^3");
    assert_eq!(chart("5:E8:0").ring.relation_string(), "z^2 = -y^5 - x^3");
    assert_eq!(chart("5:E8:0").sign, SignConvention::PlusZSquared);
    assert_eq!(chart("3:E6:0").sign, SignConvention::MinusZSquared);
    assert_eq!(chart("2:D12:0:alt").ring.relation_string(), "z^2 = x*y^6*z + x*y^6 + x^2*y");
}

#[test]
fn catalog_errors() {
    assert!(matches!(rdp_chart_from_key("7:E8"), Err(ChartError::NotInCatalog(_))));
    assert!(matches!(rdp_chart_from_key("3:D6"), Err(ChartError::NotInCatalog(_))));
    assert!(matches!(rdp_chart_from_key("2:D8:1:alt"), Err(ChartError::BadVariant(_))));
    assert!(matches!(rdp_chart_from_key("2:E8:5"), Err(ChartError::BadKey(_))));
    assert!(rdp_chart_from_key("3:A2").is_ok());
    assert!(rdp_chart_from_key("2:A16").is_err());
}

#[test]
fn equation_count_is_rmax_plus_one() {
    for (p, s) in non_taut_types(21) {
        assert_eq!(equation_count(p, s), rmax(p, s) as usize + 1, "{p}:{s}");
    }
}

/// Table keyed in a second time, as `f(x, y, z)` with `f = 0` defining the RDP.
fn second_copy(spec: &RdpSpec, alt: bool) -> String {
    let (p, n, r) = (spec.p, spec.dynkin.n, spec.r);
    let m = n / 2;
    match (p, spec.dynkin.to_string().chars().next().unwrap(), n) {
        (2, 'D', _) if n % 2 == 0 && (r > 0 || alt) => format!("z^2 + x^2*y + x*y^{m} + z*x*y^{}", m - r),
        (2, 'D', _) if n % 2 == 0 => format!("z^2 + x^2*y + x*y^{m}"),
        (2, 'D', _) if r > 0 || alt => format!("z^2 + x^2*y + z*y^{m} + z*x*y^{}", m - r),
        (2, 'D', _) => format!("z^2 + x^2*y + z*y^{m}"),
        (2, 'E', 6) => format!("z^2 + x^3 + y^2*z + {r}*x*y*z"),
        (2, 'E', 7) => {
            let beta = ["0", "z*x^2*y", "z*y^3", "z*x*y"][r as usize];
            format!("z^2 + x^3 + x*y^3 + {beta}")
        }
        (2, 'E', 8) => {
            let beta = ["0", "z*x*y^3", "z*x*y^2", "z*y^3", "z*x*y"][r as usize];
            format!("z^2 + x^3 + y^5 + {beta}")
        }
        (3, 'E', 6) => format!("-z^2 + x^3 + y^4 + {r}*x^2*y^2"),
        (3, 'E', 7) => format!("-z^2 + x^3 + x*y^3 + {r}*x^2*y^2"),
        (3, 'E', 8) => {
            let lambda = ["0", "y", "1"][r as usize];
            format!("-z^2 + x^3 + y^5 + {lambda}*x^2*y^2")
        }
        // b/2 with b = 2r
        (5, 'E', 8) => format!("z^2 + x^3 + y^5 + {r}*x*y^4"),
        _ => panic!("no second copy for {spec}"),
    }
}

fn eval_in_chart(f: &FpPoly, c: &RdpChart) -> ChartElem {
    let gens = [c.x(), c.y(), c.z()];
    let mut acc = ChartElem::zero(&c.ring);
    for (m, &coeff) in f.terms() {
        let mut t = ChartElem::one(&c.ring).scale(coeff);
        for (g, &e) in gens.iter().zip(m.exps()) {
            t = t.mul(&FpAlgebra::pow(g, e as u64));
        }
        acc = acc.add(&t);
    }
    acc
}

#[test]
fn defining_polynomial_vanishes() {
    let vars = var_names(&["x", "y", "z"]);
    for (spec, alt) in table_entries(21) {
        let c = rdp_chart(&spec, alt).unwrap();
        let f = parse_poly(PrimeField::new(spec.p), vars.clone(), &second_copy(&spec, alt)).unwrap();
        assert!(eval_in_chart(&f, &c).is_zero(), "{}", c.key());
        // the printed equation agrees with the second copy as well
        let g = parse_poly(PrimeField::new(spec.p), vars.clone(), &c.equation).unwrap();
        assert_eq!(f, g, "{}", c.key());
    }
}

#[test]
fn cyclic_chart() {
    let c = chart("5:A4");
    assert_eq!(c.ring.rank(), 5);
    assert_eq!(FpAlgebra::pow(&c.z(), 5), c.x().mul(&c.y()));
    assert_eq!(FpAlgebra::pow(&c.z(), 7), el(&c, "x*y*z^2"));
}

#[test]
fn parse_and_display() {
    let c = chart("3:E8:2");
    let a = el(&c, "2*x^-1*y^-2*z - y^3 + 4");
    assert_eq!(a.to_string(), "-x^-1*y^-2*z - y^3 + 1");
    assert_eq!(el(&c, &a.to_string()), a);
    assert!(ChartElem::parse(&c.ring, "(x + y)^-1").is_err());
    assert!(ChartElem::parse(&c.ring, "z^-1").is_err());
    assert!(ChartElem::parse(&c.ring, "q").is_err());
}

#[test]
fn quotient_maps_build() {
    for case in QuotientCase::all() {
        let q = quotient_map_chart(case).unwrap();
        assert_eq!(q.case.to_string().parse::<QuotientCase>().unwrap(), case);
        assert_eq!(q.source.p(), case.p());
    }
    let q = quotient_map_chart(QuotientCase::MuA { p: 3 }).unwrap();
    assert_eq!(q.map.image_u().to_string(), "X^3");
    assert_eq!(q.map.image_v().to_string(), "Y^3");
    assert_eq!(q.map.image_w().unwrap().to_string(), "X*Y");
    let q = quotient_map_chart(QuotientCase::AlphaE8Char2).unwrap();
    assert_eq!(q.map.image_w().unwrap().to_string(), "Y^5 + X^3");
    let q = quotient_map_chart(QuotientCase::AlphaE8Char5).unwrap();
    let expect = ChartElem::parse(&q.target, "Z*(y - X^3)^2").unwrap();
    assert_eq!(q.map.image_w().unwrap(), &expect);
    assert!("quot:2:alpha:D6".parse::<QuotientCase>().is_err());
    assert!("quot:3:mu:A1".parse::<QuotientCase>().is_err());
    assert_eq!(QuotientCase::from_index(2, Some(3)).unwrap(), QuotientCase::AlphaD { n: 3 });
}

#[test]
fn e6_char3_pullback_of_epsilon() {
    let q = quotient_map_chart(QuotientCase::AlphaE6Char3).unwrap();
    let img = q.map.apply(&q.epsilon).unwrap();
    let expect = ChartElem::parse(&q.target, "Y^-3*Z*(1 + x^-1*Y^4)").unwrap();
    assert_eq!(img, expect);
}

#[test]
fn bad_map_rejected() {
    let c = chart("2:E8:0");
    let b = ChartRing::laurent(2, ["X", "Y"], "smooth").unwrap();
    let z = ChartElem::parse(&b, "X^3 + Y^4").unwrap();
    let err = RingMap::new("bad", &c.ring, &b, (2, 0), (0, 2), Some(z)).unwrap_err();
    assert!(matches!(err, ChartError::RelationNotRespected { .. }));
    assert!(RingMap::new("bad", &c.ring, &b, (0, 0), (0, 2), None).is_err());
}

#[test]
fn ring_mismatch() {
    let a = chart("2:E8:0");
    let b = chart("2:E8:1");
    assert!(a.x().try_mul(&b.x()).is_err());
    // equal rings built twice are compatible
    let a2 = chart("2:E8:0");
    assert!(a.x().try_add(&a2.y()).is_ok());
}

fn all_charts() -> Vec<Arc<ChartRing>> {
    let mut out: Vec<_> = table_entries(12).into_iter().map(|(s, alt)| rdp_chart(&s, alt).unwrap().ring).collect();
    for p in [2, 3, 5, 7] {
        out.push(rdp_chart(&RdpSpec::new(p, Dynkin::a(p - 1), 0).unwrap(), false).unwrap().ring);
    }
    for case in QuotientCase::all() {
        let q = quotient_map_chart(case).unwrap();
        out.push(q.source);
        out.push(q.target);
    }
    out
}

fn elem_strategy() -> impl Strategy<Value = Vec<(i32, i32, u8, u32)>> {
    prop::collection::vec((-3i32..=3, -3i32..=3, 0u8..8, 1u32..7), 0..5)
}

fn build(ring: &Arc<ChartRing>, raw: &[(i32, i32, u8, u32)]) -> ChartElem {
    ChartElem::from_terms(ring, raw.iter().map(|&(i, j, c, v)| ((i, j, c % ring.rank()), v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chart_ring_axioms(idx in 0usize..1000, a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        let charts = all_charts();
        let ring = &charts[idx % charts.len()];
        let (a, b, c) = (build(ring, &a), build(ring, &b), build(ring, &c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.mul(&ChartElem::one(ring)), a.clone());
        prop_assert_eq!(FpAlgebra::frobenius(&a), FpAlgebra::pow(&a, ring.p() as u64));
    }

    #[test]
    fn split_reassembles(idx in 0usize..1000, a in elem_strategy()) {
        let charts = all_charts();
        let ring = &charts[idx % charts.len()];
        let a = build(ring, &a);
        let (xi, eta, rho) = a.split();
        prop_assert_eq!(xi.add(&eta).add(&rho), a);
        prop_assert!(xi.terms().all(|(m, _)| m.1 >= 0));
        prop_assert!(eta.terms().all(|(m, _)| m.0 >= 0 && m.1 < 0));
        prop_assert!(rho.is_residual());
    }

    #[test]
    fn maps_are_multiplicative(idx in 0usize..1000, a in elem_strategy(), b in elem_strategy()) {
        let mut maps: Vec<RingMap> = QuotientCase::all().into_iter().map(|c| quotient_map_chart(c).unwrap().map).collect();
        for (s, alt) in table_entries(10) {
            maps.push(RingMap::frobenius(&rdp_chart(&s, alt).unwrap().ring));
        }
        let m = &maps[idx % maps.len()];
        let (a, b) = (build(m.source(), &a), build(m.source(), &b));
        let lhs = m.apply(&a.mul(&b)).unwrap();
        let rhs = m.apply(&a).unwrap().mul(&m.apply(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.apply(&a.add(&b)).unwrap(), m.apply(&a).unwrap().add(&m.apply(&b).unwrap()));
    }
}
