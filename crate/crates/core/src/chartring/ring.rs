use std::collections::BTreeMap;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::Arc;

use super::ChartError;
use crate::ffpoly::{parse_poly, parse_with, var_names, CoeffRing, ExprBuilder, FpPoly, PolyError, PrimeField};
use crate::witt::FpAlgebra;

/// Key of a chart monomial `u^i v^j w^c`.
pub type Mono = (i32, i32, u8);

/// A term list `(i, j, c, coeff)`.
type TermList = Vec<(i32, i32, u8, u32)>;

/// `F_p[u^±1, v^±1][w] / (w^d - sum_{k<d} R_k w^k)` with `R_k` polynomials in
/// `u, v`. Rank 1 means no `w` at all.
#[derive(Clone, Debug)]
pub struct ChartRing {
    field: PrimeField,
    rank: u8,
    relation: Vec<BTreeMap<(i32, i32), u32>>,
    labels: [String; 3],
    name: String,
    /// `w^c` reduced, for `0 <= c <= max(2(d-1), p(d-1))`.
    wpow: Vec<TermList>,
}

impl PartialEq for ChartRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rank == other.rank
            && self.relation == other.relation
            && self.labels == other.labels
    }
}

impl Eq for ChartRing {}

impl ChartRing {
    /// `coeffs[k]` is the coefficient of `w^k` on the right-hand side of
    /// `w^d = ...`, written in the first two labels. An empty list gives rank 1.
    pub fn new(p: u32, labels: [&str; 3], name: &str, coeffs: &[&str]) -> Result<Arc<Self>, ChartError> {
        let field = PrimeField::try_new(p).ok_or(ChartError::NotPrime(p))?;
        let uv = var_names(&labels[..2]);
        let mut relation = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let poly: FpPoly = parse_poly(field, uv.clone(), c).map_err(ChartError::Poly)?;
            relation.push(
                poly.terms().map(|(m, &v)| ((m.exps()[0] as i32, m.exps()[1] as i32), v)).collect::<BTreeMap<_, _>>(),
            );
        }
        let rank = coeffs.len().max(1);
        if rank > 16 {
            return Err(ChartError::RankTooLarge(rank));
        }
        let mut ring = ChartRing {
            field,
            rank: rank as u8,
            relation,
            labels: labels.map(str::to_string),
            name: name.to_string(),
            wpow: Vec::new(),
        };
        ring.wpow = ring.compute_wpow();
        Ok(Arc::new(ring))
    }

    /// Rank-1 ring `F_p[u^±1, v^±1]`.
    pub fn laurent(p: u32, labels: [&str; 2], name: &str) -> Result<Arc<Self>, ChartError> {
        Self::new(p, [labels[0], labels[1], "w"], name, &[])
    }

    fn compute_wpow(&self) -> Vec<TermList> {
        let d = self.rank as usize;
        let max = (2 * (d - 1)).max(self.p() as usize * (d - 1));
        let mut out: Vec<TermList> = Vec::with_capacity(max + 1);
        // coefficient vectors indexed by w-degree < d
        let mut cur: Vec<BTreeMap<(i32, i32), u32>> = vec![BTreeMap::new(); d];
        cur[0].insert((0, 0), 1);
        for c in 0..=max {
            if c > 0 {
                // multiply by w
                let top = std::mem::take(&mut cur[d - 1]);
                for k in (1..d).rev() {
                    cur[k] = std::mem::take(&mut cur[k - 1]);
                }
                cur[0] = BTreeMap::new();
                if d == 1 {
                    // rank 1 has no w; powers beyond 0 are never requested
                    cur[0] = top;
                    continue;
                }
                for (k, r) in self.relation.iter().enumerate() {
                    for (&(i, j), &a) in r {
                        for (&(i2, j2), &b) in &top {
                            let e = cur[k].entry((i + i2, j + j2)).or_insert(0);
                            *e = self.field.add(e, &self.field.mul(&a, &b));
                        }
                    }
                    cur[k].retain(|_, v| *v != 0);
                }
            }
            let mut tl = Vec::new();
            for (k, m) in cur.iter().enumerate() {
                for (&(i, j), &v) in m {
                    tl.push((i, j, k as u8, v));
                }
            }
            out.push(tl);
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn labels(&self) -> &[String; 3] {
        &self.labels
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Relation coefficient of `w^k` as a polynomial in the first two labels.
    pub fn relation_coeff(&self, k: usize) -> FpPoly {
        let vars = var_names(&self.labels[..2]);
        FpPoly::from_terms(
            self.field,
            vars,
            self.relation[k].iter().map(|(&(i, j), &c)| (crate::ffpoly::Monomial::new(vec![i as u32, j as u32]), c)),
        )
    }

    /// Human-readable relation, e.g. `z^2 = x^2*y + x*y^4`.
    pub fn relation_string(&self) -> String {
        if self.rank == 1 {
            return "(none)".to_string();
        }
        let w = &self.labels[2];
        let mut parts = Vec::new();
        for k in (0..self.rank as usize).rev() {
            let c = self.relation_coeff(k);
            if c.is_zero() {
                continue;
            }
            let wk = match k {
                0 => String::new(),
                1 => w.clone(),
                _ => format!("{w}^{k}"),
            };
            parts.push(match (k, c.len()) {
                (0, _) => c.to_string(),
                (_, 1) if c.to_string() == "1" => wk,
                (_, 1) => format!("{c}*{wk}"),
                _ => format!("({c})*{wk}"),
            });
        }
        let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{w}^{} = {rhs}", self.rank)
    }

    pub(crate) fn wpow(&self, c: usize) -> &TermList {
        &self.wpow[c]
    }
}

/// An element of a [`ChartRing`]: a finite sum of `c * u^i v^j w^k`, `k < rank`.
#[derive(Clone, Debug)]
pub struct ChartElem {
    ring: Arc<ChartRing>,
    terms: BTreeMap<Mono, u32>,
}

impl PartialEq for ChartElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl ChartElem {
    pub fn zero(ring: &Arc<ChartRing>) -> Self {
        ChartElem { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<ChartRing>) -> Self {
        Self::monomial(ring, 0, 0, 0, 1)
    }

    pub fn constant(ring: &Arc<ChartRing>, c: i64) -> Self {
        let c = ring.field.reduce_i64(c);
        Self::monomial(ring, 0, 0, 0, c)
    }

    /// `coeff * u^i v^j w^c`.
    pub fn monomial(ring: &Arc<ChartRing>, i: i32, j: i32, c: u8, coeff: u32) -> Self {
        assert!(c < ring.rank, "w-exponent {c} must be below the rank {}", ring.rank);
        let coeff = coeff % ring.p();
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((i, j, c), coeff);
        }
        ChartElem { ring: ring.clone(), terms }
    }

    pub fn u(ring: &Arc<ChartRing>) -> Self {
        Self::monomial(ring, 1, 0, 0, 1)
    }

    pub fn v(ring: &Arc<ChartRing>) -> Self {
        Self::monomial(ring, 0, 1, 0, 1)
    }

    /// The generator `w`; fails on rank-1 rings.
    pub fn w(ring: &Arc<ChartRing>) -> Result<Self, ChartError> {
        if ring.rank < 2 {
            return Err(ChartError::NoW(ring.name.clone()));
        }
        Ok(Self::monomial(ring, 0, 0, 1, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, u32)>>(ring: &Arc<ChartRing>, terms: I) -> Self {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            assert!(m.2 < ring.rank, "w-exponent {} must be below the rank {}", m.2, ring.rank);
            out.add_term(m, c);
        }
        out
    }

    /// Parse a literal in the ring's labels; negative exponents are allowed on
    /// monomial units.
    pub fn parse(ring: &Arc<ChartRing>, s: &str) -> Result<Self, ChartError> {
        parse_with(&ElemBuilder { ring }, s).map_err(ChartError::Poly)
    }

    pub fn ring(&self) -> &Arc<ChartRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &u32)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Mono) -> u32 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: u32) {
        let c = c % self.ring.p();
        if c == 0 {
            return;
        }
        let f = self.ring.field;
        let e = self.terms.entry(m).or_insert(0);
        *e = f.add(e, &c);
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<(), ChartError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(ChartError::RingMismatch { left: self.ring.name.clone(), right: other.ring.name.clone() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChartError> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ChartError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero(&self.ring);
        }
        let f = self.ring.field;
        let p = f.p() as u64;
        let mut acc: HashMap<Mono, u64> = HashMap::default();
        acc.reserve((self.terms.len() * other.terms.len()).min(1 << 12));
        for (&(i1, j1, c1), &a) in &self.terms {
            for (&(i2, j2, c2), &b) in &other.terms {
                let ab = a as u64 * b as u64 % p;
                for &(di, dj, k, r) in self.ring.wpow(c1 as usize + c2 as usize) {
                    let e = acc.entry((i1 + i2 + di, j1 + j2 + dj, k)).or_insert(0);
                    *e = (*e + ab * r as u64) % p;
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, c as u32)).collect();
        ChartElem { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field;
        ChartElem { ring: self.ring.clone(), terms: self.terms.iter().map(|(&m, c)| (m, f.neg(c))).collect() }
    }

    pub fn scale(&self, k: u32) -> Self {
        let f = self.ring.field;
        let k = k % f.p();
        if k == 0 {
            return Self::zero(&self.ring);
        }
        ChartElem { ring: self.ring.clone(), terms: self.terms.iter().map(|(&m, c)| (m, f.mul(c, &k))).collect() }
    }

    /// Multiply by `u^di v^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        ChartElem {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(&(i, j, c), &v)| ((i + di, j + dj, c), v)).collect(),
        }
    }

    /// The single term of a unit monomial `c * u^i v^j`, if this is one.
    pub fn as_unit_monomial(&self) -> Option<(i32, i32, u32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(i, j, c), &v) = self.terms.iter().next()?;
        (c == 0).then_some((i, j, v))
    }

    /// Inverse of a unit monomial `c * u^i v^j`.
    pub fn inverse_unit(&self) -> Result<Self, ChartError> {
        let (i, j, v) = self.as_unit_monomial().ok_or_else(|| ChartError::NotUnit(self.to_string()))?;
        let inv = self.ring.field.inv(v).expect("nonzero coefficient");
        Ok(Self::monomial(&self.ring, -i, -j, 0, inv))
    }

    /// `(xi, eta, rho)`: `xi` holds terms with `j >= 0`, `eta` those with
    /// `i >= 0, j < 0`, and `rho` the residual terms with `i, j < 0`.
    pub fn split(&self) -> (Self, Self, Self) {
        let mut xi = BTreeMap::new();
        let mut eta = BTreeMap::new();
        let mut rho = BTreeMap::new();
        for (&(i, j, c), &v) in &self.terms {
            if j >= 0 {
                xi.insert((i, j, c), v);
            } else if i >= 0 {
                eta.insert((i, j, c), v);
            } else {
                rho.insert((i, j, c), v);
            }
        }
        let mk = |terms| ChartElem { ring: self.ring.clone(), terms };
        (mk(xi), mk(eta), mk(rho))
    }

    /// Residual part only.
    pub fn residual(&self) -> Self {
        ChartElem {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.0 < 0 && m.1 < 0).map(|(&m, &v)| (m, v)).collect(),
        }
    }

    pub fn is_residual(&self) -> bool {
        self.terms.keys().all(|&(i, j, _)| i < 0 && j < 0)
    }

    /// True if no exponent of `u` or `v` is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(i, j, _)| i >= 0 && j >= 0)
    }

    /// Same element regarded in another (equal) ring handle.
    pub fn rehome(&self, ring: &Arc<ChartRing>) -> Result<Self, ChartError> {
        if *self.ring != **ring {
            return Err(ChartError::RingMismatch { left: self.ring.name.clone(), right: ring.name.clone() });
        }
        Ok(ChartElem { ring: ring.clone(), terms: self.terms.clone() })
    }
}

impl FpAlgebra for ChartElem {
    fn characteristic(&self) -> u32 {
        self.ring.p()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ring)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("chart_add")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("chart_mul")
    }
    fn add_assign(&mut self, mut other: Self) {
        self.check(&other).expect("chart_add");
        if other.terms.len() > self.terms.len() {
            std::mem::swap(self, &mut other);
        }
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
    }
    fn neg(&self) -> Self {
        ChartElem::neg(self)
    }
    fn scale(&self, c: u32) -> Self {
        ChartElem::scale(self, c)
    }
    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }
    /// Termwise: `(sum c m)^p = sum c m^p` in characteristic `p`.
    fn frobenius(&self) -> Self {
        let p = self.ring.p() as i32;
        let mut out: HashMap<Mono, u64> = HashMap::default();
        out.reserve(self.terms.len() * 2);
        for (&(i, j, c), &a) in &self.terms {
            for &(di, dj, k, r) in self.ring.wpow(c as usize * p as usize) {
                let e = out.entry((p * i + di, p * j + dj, k)).or_insert(0);
                *e = (*e + a as u64 * r as u64) % p as u64;
            }
        }
        let terms = out.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, c as u32)).collect();
        ChartElem { ring: self.ring.clone(), terms }
    }
}

impl fmt::Display for ChartElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        let [lu, lv, lw] = &self.ring.labels;
        // w-degree first, then total degree, then the power of u
        let mut order: Vec<(&Mono, &u32)> = self.terms.iter().collect();
        order.sort_by_key(|(&(i, j, c), _)| std::cmp::Reverse((c, i + j, i)));
        for (k, (&(i, j, c), &v)) in order.into_iter().enumerate() {
            let mut parts = Vec::new();
            for (lab, e) in [(lu, i), (lv, j), (lw, c as i32)] {
                match e {
                    0 => {}
                    1 => parts.push(lab.clone()),
                    _ => parts.push(format!("{lab}^{e}")),
                }
            }
            let neg = field.is_negative(&v);
            let abs = if neg { field.neg(&v) } else { v };
            let body = match (parts.is_empty(), abs == 1) {
                (true, _) => field.render(&abs),
                (false, true) => parts.join("*"),
                (false, false) => format!("{}*{}", field.render(&abs), parts.join("*")),
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

struct ElemBuilder<'a> {
    ring: &'a Arc<ChartRing>,
}

impl ExprBuilder for ElemBuilder<'_> {
    type Out = ChartElem;

    fn constant(&self, v: i64) -> ChartElem {
        ChartElem::constant(self.ring, v)
    }
    fn ident(&self, name: &str) -> Result<ChartElem, PolyError> {
        let l = &self.ring.labels;
        if name == l[0] {
            Ok(ChartElem::u(self.ring))
        } else if name == l[1] {
            Ok(ChartElem::v(self.ring))
        } else if name == l[2] && self.ring.rank >= 2 {
            Ok(ChartElem::monomial(self.ring, 0, 0, 1, 1))
        } else {
            Err(PolyError::UnknownVariable(name.to_string()))
        }
    }
    fn add(&self, a: &ChartElem, b: &ChartElem) -> ChartElem {
        FpAlgebra::add(a, b)
    }
    fn sub(&self, a: &ChartElem, b: &ChartElem) -> ChartElem {
        FpAlgebra::add(a, &b.neg())
    }
    fn mul(&self, a: &ChartElem, b: &ChartElem) -> ChartElem {
        FpAlgebra::mul(a, b)
    }
    fn neg(&self, a: &ChartElem) -> ChartElem {
        a.neg()
    }
    fn pow(&self, a: &ChartElem, e: i64, pos: usize) -> Result<ChartElem, PolyError> {
        if e >= 0 {
            return Ok(FpAlgebra::pow(a, e as u64));
        }
        let inv = a
            .inverse_unit()
            .map_err(|_| PolyError::Parse { pos, msg: "negative exponents need a monomial unit base".into() })?;
        Ok(FpAlgebra::pow(&inv, (-e) as u64))
    }
}
