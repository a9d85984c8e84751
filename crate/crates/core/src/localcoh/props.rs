//! Seeded randomized checks that the residual representative is canonical.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::class::{reduce, reduce_with, PeelOrder};
use crate::chartring::{ChartElem, ChartRing};
use crate::witt::props::PropOutcome;
use crate::witt::WittVec;

/// Sign pattern of random Laurent exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Any exponents.
    Any,
    /// `j >= 0`: lies in `A[x^-1]`.
    InvertX,
    /// `i >= 0`: lies in `A[y^-1]`.
    InvertY,
}

pub fn random_elem<R: Rng>(rng: &mut R, ring: &Arc<ChartRing>, support: Support, max_terms: usize) -> ChartElem {
    let k = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..k)
        .map(|_| {
            let mut i: i32 = rng.gen_range(-3..=3);
            let mut j: i32 = rng.gen_range(-3..=3);
            match support {
                Support::Any => {}
                Support::InvertX => j = j.abs(),
                Support::InvertY => i = i.abs(),
            }
            let c = rng.gen_range(0..ring.rank());
            ((i, j, c), rng.gen_range(1..ring.p()))
        })
        .collect();
    ChartElem::from_terms(ring, terms)
}

/// Components get at most 3 terms, 2 from length 3 on: Witt sums of long
/// vectors grow quickly in the top components.
pub fn random_vec<R: Rng>(rng: &mut R, ring: &Arc<ChartRing>, n: usize, support: Support) -> WittVec<ChartElem> {
    let max_terms = if n >= 3 { 2 } else { 3 };
    WittVec::new((0..n).map(|_| random_elem(rng, ring, support, max_terms)).collect()).expect("n >= 1")
}

/// A random element of `W_n(A[x^-1]) + W_n(A[y^-1])`, built as a Witt sum.
pub fn random_boundary<R: Rng>(rng: &mut R, ring: &Arc<ChartRing>, n: usize) -> WittVec<ChartElem> {
    let a = random_vec(rng, ring, n, Support::InvertX);
    let b = random_vec(rng, ring, n, Support::InvertY);
    a.add(&b)
}

/// For random `v`, `s` in the boundary and `w`:
/// `reduce(v + s) = reduce(v)`, both peel orders agree, and reduce is additive.
pub fn check_canonicity(ring: &Arc<ChartRing>, n: usize, trials: usize, seed: u64) -> PropOutcome {
    let rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 48);
    let mut out = run_canonicity(ring, rng, (0..trials).map(|_| n));
    out.name = format!("canonicity-{}-n{n}", ring.name());
    out
}

/// Longest Witt length exercised for a chart of characteristic `p`.
pub fn max_length(p: u32) -> usize {
    match p {
        2 => 4,
        3 | 5 => 2,
        _ => 1,
    }
}

/// `trials` trials with the Witt length cycling through `1..=max_length(p)`.
pub fn check_canonicity_mixed(ring: &Arc<ChartRing>, trials: usize, seed: u64) -> PropOutcome {
    let rng = ChaCha8Rng::seed_from_u64(seed);
    let nmax = max_length(ring.p());
    let mut out = run_canonicity(ring, rng, (0..trials).map(|t| 1 + t % nmax));
    out.name = format!("canonicity-{}", ring.name());
    out
}

fn run_canonicity(ring: &Arc<ChartRing>, mut rng: ChaCha8Rng, lengths: impl Iterator<Item = usize>) -> PropOutcome {
    let mut failures = Vec::new();
    let mut trials = 0;
    for n in lengths {
        trials += 1;
        let v = random_vec(&mut rng, ring, n, Support::Any);
        let s = random_boundary(&mut rng, ring, n);
        let base = reduce(&v);
        let mut fail = |what: &str| {
            if failures.len() < 5 {
                failures.push(format!("{what}: v = {v}, s = {s}"));
            }
        };
        if reduce(&v.add(&s)) != base {
            fail("reduce(v + s) != reduce(v)");
        }
        if reduce_with(&v, PeelOrder::EtaFirst) != base {
            fail("peel orders disagree");
        }
        let w = random_vec(&mut rng, ring, n, Support::Any);
        let sum = base.add(&reduce(&w)).expect("same chart");
        if reduce(&v.add(&w)) != sum {
            fail("reduce is not additive");
        }
    }
    PropOutcome { name: String::new(), trials, failures }
}

/// Every Table chart with `N <= max_n` (both `D_N^0` variants) and the source
/// and target charts of the quotient maps.
pub fn catalog_rings(max_n: u32) -> Vec<Arc<ChartRing>> {
    use crate::chartring::{quotient_map_chart, rdp_chart, table_entries, QuotientCase};
    let mut rings: Vec<Arc<ChartRing>> =
        table_entries(max_n).iter().map(|(spec, alt)| rdp_chart(spec, *alt).expect("catalog entry").ring).collect();
    for case in QuotientCase::all() {
        let q = quotient_map_chart(case).expect("quotient case");
        for r in [q.source, q.target] {
            if !rings.contains(&r) {
                rings.push(r);
            }
        }
    }
    rings
}

/// [`check_canonicity_mixed`] over [`catalog_rings`], dispatched with rayon.
pub fn canonicity_suite(max_n: u32, trials: usize, seed: u64) -> Vec<PropOutcome> {
    use rayon::prelude::*;
    catalog_rings(max_n)
        .par_iter()
        .enumerate()
        .map(|(k, r)| check_canonicity_mixed(r, trials, seed.wrapping_add(k as u64)))
        .collect()
}
