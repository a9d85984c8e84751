//! Closed-form subtraction identities in small Witt rings, checked symbolically
//! over polynomial rings, and the randomised projection-formula check.

use serde::Serialize;

use super::vec::WittVec;
use crate::ffpoly::{parse_poly, var_names, FpPoly, PrimeField};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

fn vec_of(p: u32, vars: &[&str], comps: &[&str]) -> WittVec<FpPoly> {
    let v = var_names(vars);
    let f = PrimeField::new(p);
    WittVec::new(comps.iter().map(|s| parse_poly(f, v.clone(), s).expect("identity literal")).collect())
        .expect("identity vector")
}

fn record(id: &str, computed: WittVec<FpPoly>, expected: WittVec<FpPoly>) -> IdentityCheck {
    IdentityCheck {
        id: id.to_string(),
        pass: computed == expected,
        computed: computed.to_string(),
        expected: expected.to_string(),
    }
}

/// `(t1 + t2, 0, ...) - (t2, 0, ...)` in `W_n`, `p = 2`.
pub fn char2_difference_polys(n: usize) -> Vec<FpPoly> {
    let z = vec!["0"; n - 1];
    let lhs: Vec<&str> = std::iter::once("t1 + t2").chain(z.iter().copied()).collect();
    let rhs: Vec<&str> = std::iter::once("t2").chain(z.iter().copied()).collect();
    let vars = ["t1", "t2"];
    vec_of(2, &vars, &lhs).sub(&vec_of(2, &vars, &rhs)).into_components()
}

/// For `n <= 4`: each `S_i` is homogeneous of degree `2^i` and agrees with
/// `t1 * t2^(2^i - 1)` modulo `t1^2`.
pub fn check_char2_difference_shape(n: usize) -> Vec<IdentityCheck> {
    let s = char2_difference_polys(n);
    let vars = var_names(&["t1", "t2"]);
    let f2 = PrimeField::new(2);
    s.iter()
        .enumerate()
        .map(|(i, si)| {
            let deg = 1u64 << i;
            let homogeneous = si.weighted_homogeneous_degree(&[1, 1]) == Some(deg);
            // drop every term divisible by t1^2
            let low = FpPoly::from_terms(
                f2,
                vars.clone(),
                si.terms().filter(|(m, _)| m.exps()[0] < 2).map(|(m, c)| (m.clone(), *c)),
            );
            let expected = parse_poly(f2, vars.clone(), &format!("t1*t2^{}", deg - 1)).expect("literal");
            IdentityCheck {
                id: format!("char2-difference-S{i}"),
                computed: format!("S_{i} = {si}; mod t1^2: {low}; homogeneous: {homogeneous}"),
                expected: format!("homogeneous of degree {deg}, {expected} mod t1^2"),
                pass: homogeneous && low == expected,
            }
        })
        .collect()
}

/// All closed-form subtraction identities.
pub fn subtraction_identities() -> Vec<IdentityCheck> {
    let mut out = check_char2_difference_shape(4);

    let abc = ["a", "b", "c"];
    out.push(record(
        "w3-char2-three-term",
        vec_of(2, &abc, &["a + b + c", "0", "0"]).sub(&vec_of(2, &abc, &["b", "b*c", "0"])),
        vec_of(2, &abc, &["a + c", "a*b", "(a + c)^3*b + (a + c)*b^3 + (a^2 + 3*a*c + c^2)*b^2"]),
    ));

    let ab = ["a", "b"];
    out.push(record(
        "w4-char2-sum-defect",
        vec_of(2, &ab, &["a + b", "0", "0", "0"]).sub(&vec_of(2, &ab, &["a", "0", "0", "0"])).sub(&vec_of(
            2,
            &ab,
            &["b", "0", "0", "0"],
        )),
        vec_of(2, &ab, &["0", "a*b", "a*b*(a^2 + a*b + b^2)", "a*b*(a^6 + a^5*b + a^3*b^3 + a*b^5 + b^6)"]),
    ));

    let cd = ["c0", "c1", "c2", "c3", "d2"];
    out.push(record(
        "w4-char2-position-two",
        vec_of(2, &cd, &["c0", "c1", "c2 + d2", "c3"]).sub(&vec_of(2, &cd, &["0", "0", "d2", "0"])),
        vec_of(2, &cd, &["c0", "c1", "c2", "c3 + c2*d2"]),
    ));

    out.push(record(
        "w2-char3-sum-defect",
        vec_of(3, &ab, &["a + b", "0"]).sub(&vec_of(3, &ab, &["a", "0"])).sub(&vec_of(3, &ab, &["b", "0"])),
        vec_of(3, &ab, &["0", "a*b*(a + b)"]),
    ));

    out.push(record(
        "w2-char5-sum-defect",
        vec_of(5, &ab, &["a + b", "0"]).sub(&vec_of(5, &ab, &["a", "0"])).sub(&vec_of(5, &ab, &["b", "0"])),
        vec_of(5, &ab, &["0", "a*b*(a + b)*(a^2 + a*b + b^2)"]),
    ));
    out
}
