//! Seeded randomised checks of the Witt ring structure, shared by the test
//! suites and the reproduction driver.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::vec::WittVec;
use crate::ffpoly::{var_names, FpPoly, Monomial, PrimeField};

/// Supported `(p, n)` pairs.
pub const SUPPORTED: [(u32, usize); 9] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)];

#[derive(Clone, Debug, Serialize)]
pub struct PropOutcome {
    pub name: String,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl PropOutcome {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random polynomial in `x, y` with at most `max_terms` terms of degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, p: u32, max_terms: usize, max_deg: u32) -> FpPoly {
    let vars = var_names(&["x", "y"]);
    let k = rng.gen_range(0..=max_terms);
    let terms = (0..k).map(|_| {
        let dx = rng.gen_range(0..=max_deg);
        let dy = rng.gen_range(0..=max_deg - dx);
        (Monomial::new(vec![dx, dy]), rng.gen_range(1..p))
    });
    FpPoly::from_terms(PrimeField::new(p), vars, terms)
}

pub fn random_witt<R: Rng>(rng: &mut R, p: u32, n: usize) -> WittVec<FpPoly> {
    WittVec::new((0..n).map(|_| random_poly(rng, p, 3, 2)).collect()).expect("random Witt vector")
}

fn expect_eq(failures: &mut Vec<String>, what: &str, a: &WittVec<FpPoly>, b: &WittVec<FpPoly>) {
    if a != b && failures.len() < 5 {
        failures.push(format!("{what}: {a} != {b}"));
    }
}

/// Commutative-ring axioms plus the ring-map properties of `R` and `F` and
/// additivity of `V`.
pub fn check_ring_axioms(p: u32, n: usize, trials: usize, seed: u64) -> PropOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32) ^ n as u64);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let x = random_witt(&mut rng, p, n);
        let y = random_witt(&mut rng, p, n);
        let z = random_witt(&mut rng, p, n);
        let proto = x.component(0).clone();
        let zero = WittVec::zero(&proto, n);
        let one = WittVec::one(&proto, n);
        let xy = x.mul(&y);
        let xpy = x.add(&y);
        expect_eq(&mut failures, "x+y = y+x", &xpy, &y.add(&x));
        expect_eq(&mut failures, "xy = yx", &xy, &y.mul(&x));
        expect_eq(&mut failures, "(x+y)+z = x+(y+z)", &xpy.add(&z), &x.add(&y.add(&z)));
        expect_eq(&mut failures, "(xy)z = x(yz)", &xy.mul(&z), &x.mul(&y.mul(&z)));
        expect_eq(&mut failures, "x(y+z) = xy+xz", &x.mul(&y.add(&z)), &xy.add(&x.mul(&z)));
        expect_eq(&mut failures, "x+0 = x", &x.add(&zero), &x);
        expect_eq(&mut failures, "x*1 = x", &x.mul(&one), &x);
        expect_eq(&mut failures, "x+(-x) = 0", &x.add(&x.neg()), &zero);
        expect_eq(&mut failures, "x-y = x+(-y)", &x.sub(&y), &x.add(&y.neg()));
        expect_eq(&mut failures, "F(x+y) = F(x)+F(y)", &xpy.frobenius(), &x.frobenius().add(&y.frobenius()));
        expect_eq(&mut failures, "F(xy) = F(x)F(y)", &xy.frobenius(), &x.frobenius().mul(&y.frobenius()));
        expect_eq(&mut failures, "V(x+y) = V(x)+V(y)", &xpy.verschiebung(), &x.verschiebung().add(&y.verschiebung()));
        if n >= 2 {
            let r = |v: &WittVec<FpPoly>| v.restriction().expect("n >= 2");
            expect_eq(&mut failures, "R(xy) = R(x)R(y)", &r(&xy), &r(&x).mul(&r(&y)));
            expect_eq(&mut failures, "R(x+y) = R(x)+R(y)", &r(&xpy), &r(&x).add(&r(&y)));
        }
    }
    PropOutcome { name: format!("witt-ring-axioms-p{p}-n{n}"), trials, failures }
}

/// `V^m(x) * y = V^m(x * F^m(R^m(y)))` for `x` in `W_n` and `y` in `W_{n+m}`.
pub fn check_projection_formula(p: u32, n: usize, m: usize, trials: usize, seed: u64) -> PropOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed ^ ((p as u64) << 40) ^ ((n as u64) << 8) ^ m as u64);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let x = random_witt(&mut rng, p, n);
        let y = random_witt(&mut rng, p, n + m);
        let lhs = x.verschiebung_pow(m).mul(&y);
        let mut fy = y.restriction_pow(m).expect("m < n + m");
        for _ in 0..m {
            fy = fy.frobenius();
        }
        let rhs = x.mul(&fy).verschiebung_pow(m);
        expect_eq(&mut failures, "projection formula", &lhs, &rhs);
    }
    PropOutcome { name: format!("witt-projection-p{p}-n{n}-m{m}"), trials, failures }
}

/// `(n, m)` shapes with `n + m` within the supported length for `p`.
pub fn projection_shapes(p: u32) -> Vec<(usize, usize)> {
    let max = SUPPORTED.iter().filter(|(q, _)| *q == p).map(|(_, n)| *n).max().unwrap_or(1);
    let mut out = Vec::new();
    for total in 2..=max {
        for m in 1..total {
            out.push((total - m, m));
        }
    }
    out
}
