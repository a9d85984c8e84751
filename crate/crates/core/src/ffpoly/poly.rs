use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{CoeffRing, Integers, PrimeField};
use super::PolyError;

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the exponent of the first variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale_exps(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(vars) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a [`CoeffRing`]. Terms are stored in a
/// graded-lex map with no zero coefficients.
#[derive(Clone, Debug)]
pub struct MultiPoly<R: CoeffRing> {
    ring: R,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, R::Elem>,
}

pub type FpPoly = MultiPoly<PrimeField>;
pub type ZPoly = MultiPoly<Integers>;

impl<R: CoeffRing> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.vars == other.vars && self.terms == other.terms
    }
}

impl<R: CoeffRing> Eq for MultiPoly<R> {}

/// Build a shared variable list from names.
pub fn var_names<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl<R: CoeffRing> MultiPoly<R> {
    pub fn zero(ring: R, vars: Arc<[String]>) -> Self {
        MultiPoly { ring, vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, vars: Arc<[String]>, c: R::Elem) -> Self {
        let n = vars.len();
        Self::monomial(ring, vars, Monomial::one(n), c)
    }

    pub fn one(ring: R, vars: Arc<[String]>) -> Self {
        let c = ring.one();
        Self::constant(ring, vars, c)
    }

    pub fn monomial(ring: R, vars: Arc<[String]>, m: Monomial, c: R::Elem) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly { ring, vars, terms }
    }

    /// The `i`-th variable.
    pub fn var(ring: R, vars: Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        let one = ring.one();
        Self::monomial(ring, vars, Monomial::var(n, i, 1), one)
    }

    /// The variable with the given name.
    pub fn var_named(ring: R, vars: Arc<[String]>, name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(Self::var(ring, vars, i))
    }

    pub fn from_terms<I>(ring: R, vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut out = Self::zero(ring, vars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.ring.clone(), self.vars.clone())
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.ring.clone(), self.vars.clone())
    }

    pub fn constant_like(&self, c: R::Elem) -> Self {
        Self::constant(self.ring.clone(), self.vars.clone(), c)
    }

    pub fn same_context(&self, other: &Self) -> bool {
        self.ring == other.ring && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        if !(Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars) {
            return Err(PolyError::VariableMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() });
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        assert_eq!(m.0.len(), self.vars.len(), "exponent vector length");
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.zero_like());
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = self.ring.mul(ca, cb);
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(old) => *old = self.ring.add(old, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ring = &self.ring;
        let terms = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        Ok(MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms })
    }

    /// Panicking addition for callers that built both operands in one context.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("poly_add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("poly_sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("poly_mul")
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        if self.ring.is_zero(k) {
            return self.zero_like();
        }
        let ring = &self.ring;
        let terms =
            self.terms.iter().map(|(m, c)| (m.clone(), ring.mul(c, k))).filter(|(_, c)| !ring.is_zero(c)).collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect();
        MultiPoly { ring: self.ring.clone(), vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Stored coefficient of the given exponent vector, or zero.
    pub fn coefficient_of(&self, exps: &[u32]) -> Result<R::Elem, PolyError> {
        if exps.len() != self.vars.len() {
            return Err(PolyError::ExponentLength { expected: self.vars.len(), got: exps.len() });
        }
        Ok(self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common weighted degree of every term, if the polynomial is
    /// weighted-homogeneous. The zero polynomial yields `None`.
    pub fn weighted_homogeneous_degree(&self, weights: &[u64]) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Substitute a polynomial for every variable. All images share one context.
    pub fn compose(&self, images: &[MultiPoly<R>]) -> MultiPoly<R> {
        assert_eq!(images.len(), self.nvars(), "compose arity");
        let target = images.first().map(|p| p.zero_like()).expect("compose needs a variable");
        let mut power_cache: HashMap<(usize, u32), MultiPoly<R>> = HashMap::new();
        let mut out = target.clone();
        for (m, c) in &self.terms {
            let mut t = target.constant_like(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u64)).clone();
                t = t.mul(&p);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Re-express over a variable list that contains every current variable by name.
    pub fn embed(&self, target: &Arc<[String]>) -> Result<Self, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for v in self.vars.iter() {
            let j = target
                .iter()
                .position(|t| t == v)
                .ok_or_else(|| PolyError::VariableMismatch { left: self.vars.to_vec(), right: target.to_vec() })?;
            map.push(j);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            (Monomial(e), c.clone())
        });
        Ok(Self::from_terms(self.ring.clone(), target.clone(), terms))
    }

    /// Map coefficients into another ring, dropping those that become zero.
    pub fn map_coeffs<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        MultiPoly::from_terms(ring, self.vars.clone(), self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl MultiPoly<Integers> {
    /// Divide every coefficient by `d`, failing on the first term that is not divisible.
    pub fn exact_div_by_int(&self, d: &BigInt) -> Result<Self, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible {
                    term: format!("{}*{}", c, m.render(&self.vars)),
                    divisor: d.to_string(),
                });
            }
            terms.insert(m.clone(), q);
        }
        Ok(MultiPoly { ring: Integers, vars: self.vars.clone(), terms })
    }

    pub fn reduce_mod(&self, field: PrimeField) -> FpPoly {
        self.map_coeffs(field, |c| field.reduce_big(c))
    }
}

impl MultiPoly<PrimeField> {
    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    /// `f^p`, computed termwise since coefficients are fixed by Frobenius.
    pub fn frobenius(&self) -> Self {
        let p = self.ring.p();
        let terms = self.terms.iter().map(|(m, c)| (m.scale_exps(p), *c)).collect();
        MultiPoly { ring: self.ring, vars: self.vars.clone(), terms }
    }

    /// Integer lift with coefficients in `[0, p)`.
    pub fn lift(&self) -> ZPoly {
        self.map_coeffs(Integers, |c| BigInt::from(*c))
    }
}

impl<R: CoeffRing> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = self.ring.is_negative(c);
            let abs = if neg { self.ring.neg(c) } else { c.clone() };
            let coeff = self.ring.render(&abs);
            let body = if m.is_one() {
                coeff
            } else if self.ring.is_one(&abs) {
                m.render(&self.vars)
            } else {
                format!("{}*{}", coeff, m.render(&self.vars))
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
