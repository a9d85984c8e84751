use std::fmt;

use crate::ffpoly::{CoeffRing, Fp, FpPoly};

/// A commutative `F_p`-algebra whose elements carry their own ring context.
/// Witt vectors are built over any implementor.
pub trait FpAlgebra: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn characteristic(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiply by the residue of `c` in `F_p`.
    fn scale(&self, c: u32) -> Self;
    /// Whether the two elements live in the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// In-place sum; implementations may reuse the larger operand.
    fn add_assign(&mut self, other: Self) {
        *self = self.add(&other);
    }

    fn pow(&self, mut e: u64) -> Self {
        let p = self.characteristic() as u64;
        if e >= p && e.is_multiple_of(p) {
            return self.pow(e / p).frobenius();
        }
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

    /// The absolute Frobenius `x -> x^p`; [`FpAlgebra::pow`] routes
    /// multiples of `p` through it.
    fn frobenius(&self) -> Self;
}

impl FpAlgebra for Fp {
    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn zero_like(&self) -> Self {
        Fp::zero(self.p())
    }
    fn one_like(&self) -> Self {
        Fp::one(self.p())
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn scale(&self, c: u32) -> Self {
        *self * Fp::new(self.p(), c)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.p() == other.p()
    }
    fn frobenius(&self) -> Self {
        *self
    }
}

impl FpAlgebra for FpPoly {
    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn zero_like(&self) -> Self {
        FpPoly::zero_like(self)
    }
    fn one_like(&self) -> Self {
        FpPoly::one_like(self)
    }
    fn is_zero(&self) -> bool {
        FpPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FpPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FpPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        FpPoly::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        FpPoly::sub(self, other)
    }
    fn scale(&self, c: u32) -> Self {
        let k = self.ring().from_i64(c as i64);
        FpPoly::scale(self, &k)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.same_context(other)
    }
    fn pow(&self, e: u64) -> Self {
        FpPoly::pow(self, e)
    }
    fn frobenius(&self) -> Self {
        FpPoly::frobenius(self)
    }
}
