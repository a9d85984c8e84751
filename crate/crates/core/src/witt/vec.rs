use std::fmt;

use super::algebra::FpAlgebra;
use super::table::{witt_table, Evaluator, WittOp};
use super::WittError;

/// A truncated p-typical Witt vector `(x_0, ..., x_{n-1})` over `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVec<E: FpAlgebra> {
    comps: Vec<E>,
}

impl<E: FpAlgebra> WittVec<E> {
    /// Components must be non-empty and share one ring.
    pub fn new(comps: Vec<E>) -> Result<Self, WittError> {
        let first = comps.first().ok_or(WittError::ZeroLength)?;
        if comps.iter().any(|c| !c.same_ring(first)) {
            return Err(WittError::ContextMismatch);
        }
        Ok(WittVec { comps })
    }

    pub fn zero(proto: &E, n: usize) -> Self {
        assert!(n >= 1, "Witt length must be positive");
        WittVec { comps: vec![proto.zero_like(); n] }
    }

    pub fn one(proto: &E, n: usize) -> Self {
        Self::teichmuller(&proto.one_like(), n)
    }

    /// `[x] = (x, 0, ..., 0)`.
    pub fn teichmuller(x: &E, n: usize) -> Self {
        Self::supported_at(x, n, 0)
    }

    /// `V^i[x]` truncated to length `n`: `x` in position `i`, zero elsewhere.
    pub fn supported_at(x: &E, n: usize, i: usize) -> Self {
        assert!(i < n, "position {i} outside length {n}");
        let mut comps = vec![x.zero_like(); n];
        comps[i] = x.clone();
        WittVec { comps }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn p(&self) -> u32 {
        self.comps[0].characteristic()
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }

    pub fn component(&self, i: usize) -> &E {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(E::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), WittError> {
        if self.len() != other.len() {
            return Err(WittError::LengthMismatch { left: self.len(), right: other.len() });
        }
        if self.p() != other.p() {
            return Err(WittError::CharacteristicMismatch { left: self.p(), right: other.p() });
        }
        if !self.comps[0].same_ring(&other.comps[0]) {
            return Err(WittError::ContextMismatch);
        }
        Ok(())
    }

    fn binary(&self, other: &Self, op: WittOp) -> Result<Self, WittError> {
        self.check(other)?;
        let n = self.len();
        let table = witt_table(self.p(), n)?;
        let vals: Vec<&E> = self.comps.iter().chain(other.comps.iter()).collect();
        let mut ev = Evaluator::new(&vals);
        let proto = &self.comps[0];
        let comps = table.polys(op).iter().map(|q| ev.eval(q, proto)).collect();
        Ok(WittVec { comps })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, WittError> {
        if other.is_zero() {
            self.check(other)?;
            return Ok(self.clone());
        }
        if self.is_zero() {
            self.check(other)?;
            return Ok(other.clone());
        }
        self.binary(other, WittOp::Sum)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, WittError> {
        if other.is_zero() {
            self.check(other)?;
            return Ok(self.clone());
        }
        self.binary(other, WittOp::Difference)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, WittError> {
        self.binary(other, WittOp::Product)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("witt_add")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("witt_sub")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("witt_mul")
    }

    pub fn neg(&self) -> Self {
        if self.p() != 2 {
            return WittVec { comps: self.comps.iter().map(E::neg).collect() };
        }
        let table = witt_table(2, self.len()).expect("p = 2 table");
        let vals: Vec<&E> = self.comps.iter().collect();
        let mut ev = Evaluator::new(&vals);
        let proto = &self.comps[0];
        WittVec { comps: table.neg_polys().iter().map(|q| ev.eval(q, proto)).collect() }
    }

    /// `[g] * x = (g x_0, g^p x_1, g^{p^2} x_2, ...)`.
    pub fn mul_teichmuller(&self, g: &E) -> Self {
        let mut gp = g.clone();
        let mut comps = Vec::with_capacity(self.len());
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                gp = gp.frobenius();
            }
            comps.push(c.mul(&gp));
        }
        WittVec { comps }
    }

    /// `V: W_n -> W_{n+1}`.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.len() + 1);
        comps.push(self.comps[0].zero_like());
        comps.extend(self.comps.iter().cloned());
        WittVec { comps }
    }

    /// `V^m`.
    pub fn verschiebung_pow(&self, m: usize) -> Self {
        let mut comps = vec![self.comps[0].zero_like(); m];
        comps.extend(self.comps.iter().cloned());
        WittVec { comps }
    }

    /// `R: W_n -> W_{n-1}`.
    pub fn restriction(&self) -> Result<Self, WittError> {
        if self.len() == 1 {
            return Err(WittError::RestrictionOfLengthOne);
        }
        Ok(WittVec { comps: self.comps[..self.len() - 1].to_vec() })
    }

    /// `R^m`, defined for `m < n`.
    pub fn restriction_pow(&self, m: usize) -> Result<Self, WittError> {
        if m >= self.len() {
            return Err(WittError::RestrictionOfLengthOne);
        }
        Ok(WittVec { comps: self.comps[..self.len() - m].to_vec() })
    }

    /// Componentwise `p`-th power.
    pub fn frobenius(&self) -> Self {
        WittVec { comps: self.comps.iter().map(E::frobenius).collect() }
    }

    /// Apply a ring map componentwise (the functoriality of `W_n`).
    pub fn map<F: FpAlgebra>(&self, f: impl Fn(&E) -> F) -> Result<WittVec<F>, WittError> {
        WittVec::new(self.comps.iter().map(f).collect())
    }
}

impl<E: FpAlgebra> fmt::Display for WittVec<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
