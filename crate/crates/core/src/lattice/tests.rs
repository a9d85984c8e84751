use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::normal::{determinant, hermite_rows, mat_mul, smith, to_big};
use super::*;
use crate::dynkin::Dynkin;

fn gram(rows: &[&[i64]]) -> GramLattice {
    GramLattice::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn rat(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn a20_glue_spec() -> GlueSpec {
    GlueSpec {
        l: LatticeSource::Dynkin { dynkin: "A20".into() },
        t: LatticeSource::Gram { gram: gram(&[&[2, 5], &[5, 2]]) },
        p: 3,
        pairs: vec![GluePair { l: (1..=20).map(|i| format!("{i}/7")).collect(), t: vec!["4/7".into(), "4/7".into()] }],
    }
}

/// Determinantal divisors: `d_1 ... d_k = gcd of the k x k minors`.
fn invariant_factors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    use num_integer::Integer;
    let n = m.len();
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&determinant(&to_big(&minor)));
            }
        }
        out.push(if prev.is_zero() { BigInt::zero() } else { &g / &prev });
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn dynkin_lattices() {
    assert_eq!(dynkin_gram(Dynkin::a(2)).gram(), &[vec![-2, 1], vec![1, -2]]);
    for n in 1..=21 {
        let l = dynkin_gram(Dynkin::a(n));
        assert_eq!(l.det().abs(), BigInt::from(n + 1));
        assert_eq!(l.signature().unwrap(), (0, n as usize));
    }
    for n in 4..=21 {
        let l = dynkin_gram(Dynkin::d(n));
        assert_eq!(l.det().abs(), BigInt::from(4), "D{n}");
        let want: &[u64] = if n % 2 == 0 { &[2, 2] } else { &[4] };
        assert_eq!(DiscForm::new(&l).unwrap().orders(), want, "D{n}");
    }
    for (n, d) in [(6, 3), (7, 2), (8, 1)] {
        let l = dynkin_gram(Dynkin::e(n));
        assert_eq!(l.det().abs(), BigInt::from(d));
        assert_eq!(DiscForm::new(&l).unwrap().order(), d as u64);
        assert!(l.is_even());
    }
    assert_eq!(dynkin_gram(Dynkin::e(8)).signature().unwrap(), (0, 8));
}

#[test]
fn gram_validation() {
    assert_eq!(GramLattice::new(vec![]), Err(LatticeError::Empty));
    assert_eq!(GramLattice::new(vec![vec![1, 2], vec![3, 1]]), Err(LatticeError::NotSymmetric));
    assert_eq!(GramLattice::new(vec![vec![1, 1], vec![1, 1]]), Err(LatticeError::Degenerate));
    assert_eq!(GramLattice::parse("[[2,5],[5,2]]").unwrap(), gram(&[&[2, 5], &[5, 2]]));
    assert!(GramLattice::parse("[[2,5],[5]]").is_err());
}

#[test]
fn discriminant_groups() {
    let a20 = DiscForm::new(&dynkin_gram(Dynkin::a(20))).unwrap();
    assert_eq!(a20.orders(), &[21]);
    let t = DiscForm::new(&gram(&[&[2, 5], &[5, 2]])).unwrap();
    assert_eq!(t.orders(), &[21]);
    let u = DiscForm::new(&gram(&[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(u.order(), 1);
    assert!(u.orders().is_empty());
    assert_eq!(u.q_value(&[]).unwrap(), BigRational::zero());

    let m4 = DiscForm::new(&gram(&[&[-4]])).unwrap();
    assert_eq!(m4.orders(), &[4]);
    let g = m4.coords(&[rat("1/4")]).unwrap();
    assert_eq!(m4.q_value(&g).unwrap(), rat("7/4"));
    assert_eq!(m4.q_value(&[0]).unwrap(), BigRational::zero());
    assert_eq!(m4.q_value(&[4]), Err(LatticeError::OutOfRange(vec![4])));
    assert_eq!(m4.coords(&[rat("1/8")]), Err(LatticeError::NotInDual));
}

#[test]
fn a20_pair_is_anti_isometric() {
    let l = dynkin_gram(Dynkin::a(20));
    let t = gram(&[&[2, 5], &[5, 2]]);
    let lv: Vec<BigRational> = (1..=20).map(|i| rat(&format!("{i}/7"))).collect();
    let tv = vec![rat("4/7"), rat("4/7")];
    assert_eq!(l.pair(&lv, &lv) + t.pair(&tv, &tv), rat("-4"));
    let (dl, dt) = (DiscForm::new(&l).unwrap(), DiscForm::new(&t).unwrap());
    let (cl, ct) = (dl.coords(&lv).unwrap(), dt.coords(&tv).unwrap());
    assert_eq!(dl.element_order(&cl), 7);
    assert_eq!(dt.element_order(&ct), 7);
    let sum = dl.q_value(&cl).unwrap() + dt.q_value(&ct).unwrap();
    assert!((sum / rat("2")).is_integer());
}

#[test]
fn a20_glue() {
    let out = glue(&a20_glue_spec()).unwrap();
    assert!(out.even);
    assert_eq!(out.signature, (1, 21));
    assert_eq!(out.index, 7);
    assert_eq!(out.disc_orders, vec![3, 3]);
    assert_eq!(out.pair_norms, vec!["-4"]);
    assert_eq!(out.lattice.rank(), 22);
}

#[test]
fn glue_rejections() {
    // q_L(l) + q_T(t) = -20*21/49 + 14/49 is not in 2Z
    let mut spec = a20_glue_spec();
    spec.pairs[0].t = vec!["1/7".into(), "1/7".into()];
    assert!(matches!(glue(&spec), Err(LatticeError::Glue(_))));
    // 3-torsion is not prime to 3
    let mut spec = a20_glue_spec();
    spec.pairs[0].l = (1..=20).map(|i| format!("{i}/3")).collect();
    assert!(matches!(glue(&spec), Err(LatticeError::Glue(_))));
    // not in the dual
    let mut spec = a20_glue_spec();
    spec.pairs[0].t = vec!["1/14".into(), "0".into()];
    assert!(matches!(glue(&spec), Err(LatticeError::Glue(_))));
    // phi must cover the whole prime-to-p part: with p = 7 the 3-parts are left out
    let mut spec = a20_glue_spec();
    spec.p = 7;
    assert!(glue(&spec).is_err());
}

#[test]
fn signatures() {
    assert_eq!(gram(&[&[2, 5], &[5, 2]]).signature().unwrap(), (1, 1));
    assert_eq!(gram(&[&[0, 1], &[1, 0]]).signature().unwrap(), (1, 1));
    assert_eq!(gram(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -3]]).signature().unwrap(), (1, 2));
    assert_eq!(gram(&[&[0, 2, 1], &[2, 0, 1], &[1, 1, 0]]).signature().unwrap(), (1, 2));
}

#[test]
fn overlattice_examples() {
    let pos = unimodular_overlattice_exists(&gram(&[&[-2, 0], &[0, 2]])).unwrap();
    assert!(pos.exists);
    let w = pos.witness.unwrap();
    assert!(w.is_unimodular() && w.is_even());
    assert_eq!(w.signature().unwrap(), (1, 1));

    let l = gram(&[&[-4]]).direct_sum(&gram(&[&[7]])).direct_sum(&gram(&[&[2, 1], &[1, 4]]));
    let neg = unimodular_overlattice_exists(&l).unwrap();
    assert_eq!(neg.disc_order, 196);
    assert!(!neg.exists && neg.witness.is_none());

    // [4] has no even unimodular overlattice; [4] + [1] has an odd one, spanned with e/2
    assert!(!unimodular_overlattice_exists(&gram(&[&[4]])).unwrap().exists);
    let odd = unimodular_overlattice_exists(&gram(&[&[4, 0], &[0, 1]])).unwrap();
    assert!(odd.exists && !odd.witness.unwrap().is_even());

    // non-square discriminant
    assert!(!unimodular_overlattice_exists(&gram(&[&[2, 5], &[5, 2]])).unwrap().exists);
    // A1 + A1: both q-values are 3/2, so no even overlattice
    assert!(
        !unimodular_overlattice_exists(&dynkin_gram(Dynkin::a(1)).direct_sum(&dynkin_gram(Dynkin::a(1))))
            .unwrap()
            .exists
    );
    // D8 sits in E8 with index 2 (spinor class q = 2); D4 has q = 1 on all three classes
    let d8 = unimodular_overlattice_exists(&dynkin_gram(Dynkin::d(8))).unwrap();
    assert!(d8.exists);
    assert_eq!(d8.witness.unwrap().signature().unwrap(), (0, 8));
    assert!(!unimodular_overlattice_exists(&dynkin_gram(Dynkin::d(4))).unwrap().exists);
    // D16 has an isotropic spinor class
    let d16 = unimodular_overlattice_exists(&dynkin_gram(Dynkin::d(16))).unwrap();
    assert!(d16.exists);
    assert!(d16.witness.unwrap().is_even());
    // disc 441 is a square, but no even unimodular lattice has signature (1, 21)
    let big = dynkin_gram(Dynkin::a(20)).direct_sum(&gram(&[&[2, 5], &[5, 2]]));
    let r = unimodular_overlattice_exists(&big).unwrap();
    assert_eq!(r.disc_order, 441);
    assert!(!r.exists);
}

#[test]
fn overlattice_guard() {
    let l = gram(&[&[-400]]).direct_sum(&gram(&[&[400]]));
    assert_eq!(unimodular_overlattice_exists(&l).unwrap_err(), LatticeError::Guard(160_000));
}

/// Reduced positive definite binary forms `[[a,b],[b,c]]` with `ac - b^2 = disc`.
fn binary_forms(disc: i64) -> Vec<GramLattice> {
    let mut out = Vec::new();
    for a in 1..=disc {
        for b in -a..=a {
            if 4 * b * b > a * a || (disc + b * b) % a != 0 {
                continue;
            }
            let c = (disc + b * b) / a;
            if c >= a {
                out.push(gram(&[&[a, b], &[b, c]]));
            }
        }
    }
    out
}

#[test]
fn obstruction_families() {
    let l1s = [(gram(&[&[-4]]), 1u32), (dynkin_gram(Dynkin::d(5)), 1), (gram(&[&[-16]]), 2)];
    let mut tested = 0;
    for d0 in [7i64, 15, 23] {
        for (l1, x) in &l1s {
            assert_eq!(l1.det(), -BigInt::from(4i64.pow(*x)));
            for n in 1..=2i64 {
                for k in 1..=2i64 {
                    let order = 4u64.pow(*x) * (n * n * d0 * k * k * d0) as u64;
                    if order > GUARD {
                        continue;
                    }
                    for l3 in binary_forms(k * k * d0) {
                        let l = l1.direct_sum(&gram(&[&[n * n * d0]])).direct_sum(&l3);
                        let r = unimodular_overlattice_exists(&l).unwrap();
                        assert!(!r.exists, "{l}");
                        tested += 1;
                    }
                }
            }
        }
    }
    assert!(tested > 50, "{tested}");
}

#[test]
fn hermite_basis() {
    let m = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![0, 0, 0]]);
    let h = hermite_rows(&m);
    assert_eq!(h.len(), 3);
    for (i, row) in h.iter().enumerate() {
        assert!(row[..i].iter().all(Zero::is_zero));
        assert!(row[i].is_positive());
    }
    // same lattice: |det| agrees with the gcd of maximal minors
    let det = determinant(&h);
    let oracle: BigInt =
        invariant_factors_oracle(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).iter().product();
    assert_eq!(det.abs(), oracle.abs());
}

fn small_symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(-6i64..=6, n * (n + 1) / 2).prop_map(move |xs| {
        let mut m = vec![vec![0; n]; n];
        let mut it = xs.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        m
    })
}

fn nondegenerate(max_n: usize) -> impl Strategy<Value = GramLattice> {
    (1..=max_n).prop_flat_map(small_symmetric).prop_filter_map("degenerate", |m| GramLattice::new(m).ok())
}

fn even_nondegenerate(max_n: usize) -> impl Strategy<Value = GramLattice> {
    (1..=max_n).prop_flat_map(small_symmetric).prop_filter_map("degenerate", |mut m| {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] *= 2;
        }
        GramLattice::new(m).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_matches_determinantal_divisors(m in (1usize..=4).prop_flat_map(small_symmetric)) {
        let s = smith(&to_big(&m));
        let d = mat_mul(&mat_mul(&s.u, &to_big(&m)), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert_eq!(x, &if i == j { s.diag[i].clone() } else { BigInt::zero() });
            }
        }
        prop_assert_eq!(determinant(&s.u).abs(), BigInt::from(1));
        prop_assert_eq!(determinant(&s.v).abs(), BigInt::from(1));
        prop_assert_eq!(s.diag, invariant_factors_oracle(&m));
    }

    #[test]
    fn disc_order_is_det(l in nondegenerate(4)) {
        let d = DiscForm::new(&l).unwrap();
        prop_assert_eq!(BigInt::from(d.order()), l.det().abs());
        for w in d.orders().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn q_is_well_defined(l in nondegenerate(4), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let d = DiscForm::new(&l).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let modulus = BigRational::from_integer(BigInt::from(d.q_modulus()));
        for _ in 0..8 {
            let c: Vec<u64> = d.orders().iter().map(|&n| rng.gen_range(0..n)).collect();
            let c2: Vec<u64> = d.orders().iter().map(|&n| rng.gen_range(0..n)).collect();
            let v = d.lift(&c).unwrap();
            prop_assert_eq!(d.coords(&v).unwrap(), c.clone());
            // another representative of the same class
            let shift: Vec<BigRational> = v.iter().map(|x| x + BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)))).collect();
            prop_assert_eq!(d.coords(&shift).unwrap(), c.clone());
            let diff = (l.pair(&shift, &shift) - d.q_value(&c).unwrap()) / &modulus;
            prop_assert!(diff.is_integer());
            // polarization: q(v + w) - q(v) - q(w) = 2 b(v, w)
            let s = d.add(&c, &c2);
            let lhs = d.q_value(&s).unwrap() - d.q_value(&c).unwrap() - d.q_value(&c2).unwrap()
                - d.b_value(&c, &c2).unwrap() * BigRational::from_integer(BigInt::from(2));
            prop_assert!((lhs / &modulus).is_integer());
        }
    }

    #[test]
    fn signature_counts_rank(l in nondegenerate(5)) {
        let (p, n) = l.signature().unwrap();
        prop_assert_eq!(p + n, l.rank());
        // the sign of the determinant is (-1)^{n_-}
        prop_assert_eq!(l.det().is_negative(), n % 2 == 1);
    }

    #[test]
    fn diagonal_glue_index(l in even_nondegenerate(3)) {
        // glue L to L(-1) along the identity: an even unimodular lattice
        let neg = GramLattice::new(l.gram().iter().map(|r| r.iter().map(|x| -x).collect()).collect()).unwrap();
        let d = DiscForm::new(&l).unwrap();
        prop_assume!(d.order() <= 2000);
        let order = d.order();
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47].into_iter().find(|q| !order.is_multiple_of(*q)).unwrap();
        let pairs = d.generators().iter().map(|g| {
            let v: Vec<String> = g.iter().map(show_rational).collect();
            GluePair { l: v.clone(), t: v }
        }).collect();
        let spec = GlueSpec { l: LatticeSource::Gram { gram: l.clone() }, t: LatticeSource::Gram { gram: neg }, p, pairs };
        let out = glue(&spec).unwrap();
        prop_assert_eq!(out.index, order);
        prop_assert!(out.lattice.is_unimodular());
        prop_assert!(out.even);
    }

    #[test]
    fn overlattice_stable_under_unimodular_sum(l in nondegenerate(3)) {
        let d = DiscForm::new(&l).unwrap();
        prop_assume!(d.order() <= 5000);
        let u = if l.is_even() { gram(&[&[0, 1], &[1, 0]]) } else { gram(&[&[1]]) };
        let a = unimodular_overlattice_exists(&l).unwrap();
        let b = unimodular_overlattice_exists(&l.direct_sum(&u)).unwrap();
        prop_assert_eq!(a.exists, b.exists);
        if let Some(w) = b.witness {
            prop_assert!(w.is_unimodular());
        }
    }
}
