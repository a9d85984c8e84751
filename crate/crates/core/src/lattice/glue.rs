use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{dynkin_gram, extend_lattice, parse_rational, show_rational, DiscForm, GramLattice, LatticeError};

/// A lattice given either by a root system symbol or by a Gram matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSource {
    Dynkin { dynkin: String },
    Gram { gram: GramLattice },
}

impl LatticeSource {
    pub fn lattice(&self) -> Result<GramLattice, LatticeError> {
        match self {
            LatticeSource::Dynkin { dynkin } => Ok(dynkin_gram(dynkin.parse()?)),
            LatticeSource::Gram { gram } => Ok(gram.clone()),
        }
    }
}

/// `l in L^*` glued to `t in T^*`; coordinates are rationals in the
/// respective lattice bases.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluePair {
    pub l: Vec<String>,
    pub t: Vec<String>,
}

/// Glue data: `phi` on the prime-to-`p` parts is determined by `l_i -> t_i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueSpec {
    pub l: LatticeSource,
    pub t: LatticeSource,
    pub p: u64,
    pub pairs: Vec<GluePair>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueOutcome {
    pub lattice: GramLattice,
    /// `[Lambda : L (+) T]`
    pub index: u64,
    pub signature: (usize, usize),
    pub even: bool,
    pub det: String,
    pub disc_orders: Vec<u64>,
    /// `l_i^2 + t_i^2`
    pub pair_norms: Vec<String>,
}

fn parse_vec(v: &[String]) -> Result<Vec<BigRational>, LatticeError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// The prime-to-`p` part of `n`.
fn prime_to(n: u64, p: u64) -> u64 {
    let mut n = n;
    while p > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n
}

/// Glue `L` and `T` along the graph of `phi`, checking that `phi` is an
/// anti-isometry between the prime-to-`p` parts of the discriminant groups.
pub fn glue(spec: &GlueSpec) -> Result<GlueOutcome, LatticeError> {
    let l = spec.l.lattice()?;
    let t = spec.t.lattice()?;
    let (dl, dt) = (DiscForm::new(&l)?, DiscForm::new(&t)?);
    let modulus = if l.is_even() && t.is_even() { 2 } else { 1 };
    let mut pairs = Vec::with_capacity(spec.pairs.len());
    for pair in &spec.pairs {
        let (lv, tv) = (parse_vec(&pair.l)?, parse_vec(&pair.t)?);
        let cl = dl.coords(&lv).map_err(|e| LatticeError::Glue(format!("l: {e}")))?;
        let ct = dt.coords(&tv).map_err(|e| LatticeError::Glue(format!("t: {e}")))?;
        for (name, ord) in [("l", dl.element_order(&cl)), ("t", dt.element_order(&ct))] {
            if prime_to(ord, spec.p) != ord {
                return Err(LatticeError::Glue(format!("{name} has order {ord}, not prime to {}", spec.p)));
            }
        }
        pairs.push((lv, tv, cl, ct));
    }
    let mut pair_norms = Vec::new();
    for (i, (li, ti, _, _)) in pairs.iter().enumerate() {
        let norm = l.pair(li, li) + t.pair(ti, ti);
        if !(&norm / BigRational::from_integer(BigInt::from(modulus))).is_integer() {
            return Err(LatticeError::Glue(format!(
                "q_L(l) + q_T(t) = {} is not 0 mod {modulus}",
                show_rational(&norm)
            )));
        }
        pair_norms.push(show_rational(&norm));
        for (lj, tj, _, _) in &pairs[..i] {
            let b = l.pair(li, lj) + t.pair(ti, tj);
            if !b.is_integer() {
                return Err(LatticeError::Glue(format!("b_L + b_T = {} is not 0 mod 1", show_rational(&b))));
            }
        }
    }

    // the graph H of phi inside A_L (+) A_T
    let start = (vec![0; dl.orders().len()], vec![0; dt.orders().len()]);
    let mut graph: BTreeSet<(Vec<u64>, Vec<u64>)> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for (_, _, cl, ct) in &pairs {
            let next = (dl.add(&a, cl), dt.add(&b, ct));
            if graph.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let h = graph.len() as u64;
    let proj_l: BTreeSet<_> = graph.iter().map(|(a, _)| a).collect();
    let proj_t: BTreeSet<_> = graph.iter().map(|(_, b)| b).collect();
    let (pl, pt) = (prime_to(dl.order(), spec.p), prime_to(dt.order(), spec.p));
    if proj_l.len() as u64 != h || proj_t.len() as u64 != h {
        return Err(LatticeError::Glue("the pairs do not define a map".into()));
    }
    if h != pl || h != pt {
        return Err(LatticeError::Glue(format!(
            "phi covers {h} elements; the prime-to-{} parts have orders {pl} and {pt}",
            spec.p
        )));
    }

    let sum = l.direct_sum(&t);
    let glue_vectors: Vec<Vec<BigRational>> =
        pairs.iter().map(|(lv, tv, _, _)| lv.iter().chain(tv).cloned().collect()).collect();
    let (lattice, _) = extend_lattice(&sum, &glue_vectors)?;

    let (sl, st) = (l.signature()?, t.signature()?);
    let signature = lattice.signature()?;
    if signature != (sl.0 + st.0, sl.1 + st.1) {
        return Err(LatticeError::Check(format!("signature {signature:?}")));
    }
    let even = lattice.is_even();
    if modulus == 2 && !even {
        return Err(LatticeError::Check("glued lattice is odd".into()));
    }
    let det = lattice.det();
    if det.abs() * BigInt::from(h) * BigInt::from(h) != (l.det() * t.det()).abs() {
        return Err(LatticeError::Check(format!("index {h} does not match determinant {det}")));
    }
    let disc_orders = DiscForm::new(&lattice)?.orders().to_vec();
    Ok(GlueOutcome { lattice, index: h, signature, even, det: det.to_string(), disc_orders, pair_norms })
}
