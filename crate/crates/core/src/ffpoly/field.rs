//! Prime fields, the integers, and the coefficient-ring abstraction used by
//! [`MultiPoly`](super::MultiPoly).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Largest modulus accepted by [`PrimeField`] and [`Fp`].
pub const MAX_PRIME: u32 = 1 << 16;

/// Trial-division primality test; moduli here are tiny.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A ring of polynomial coefficients. The ring value carries whatever context
/// its elements need (the modulus for `F_p`, nothing for `Z`).
pub trait CoeffRing: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Signed decimal rendering used by polynomial printers.
    fn render(&self, a: &Self::Elem) -> String;

    /// True when the rendered form starts with a minus sign.
    fn is_negative(&self, a: &Self::Elem) -> bool;
}

/// The prime field `F_p` as a coefficient ring; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Panics unless `p` is a prime below [`MAX_PRIME`].
    pub fn new(p: u32) -> Self {
        Self::try_new(p).unwrap_or_else(|| panic!("{p} is not a supported prime"))
    }

    pub fn try_new(p: u32) -> Option<Self> {
        (p < MAX_PRIME && is_prime(p)).then_some(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn reduce_big(&self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.to_u32().expect("residue fits in u32")
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| pow_mod(a, self.p - 2, self.p))
    }

    pub fn elem(&self, v: u32) -> Fp {
        Fp::new(self.p, v)
    }
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = (base % p) as u64;
    let m = p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

impl CoeffRing for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn render(&self, a: &u32) -> String {
        // symmetric representative, so that -1 prints as -1 rather than p-1
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn is_negative(&self, a: &u32) -> bool {
        *a > self.p / 2
    }
}

/// The integers, for the characteristic-zero side of the Witt polynomial derivation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &BigInt) -> bool {
        a.is_negative()
    }
}

/// A scalar of `F_p` that remembers its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
    value: u32,
}

impl Fp {
    pub fn new(p: u32, value: u32) -> Self {
        debug_assert!(is_prime(p));
        Self { p, value: value % p }
    }

    pub fn from_i64(p: u32, v: i64) -> Self {
        Self { p, value: v.rem_euclid(p as i64) as u32 }
    }

    pub fn zero(p: u32) -> Self {
        Self { p, value: 0 }
    }

    pub fn one(p: u32) -> Self {
        Self { p, value: 1 % p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Fp::one(self.p);
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        PrimeField { p: self.p }.inv(self.value).map(|v| Fp { p: self.p, value: v })
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.p, other.p, "mixing F_{} and F_{}", self.p, other.p);
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { p: self.p, value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32 }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { p: self.p, value: if self.value == 0 { 0 } else { self.p - self.value } }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp { p: self.p, value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32 }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(PrimeField::try_new(4).is_none());
        assert!(PrimeField::try_new(65537).is_none());
        assert!(PrimeField::try_new(65521).is_some());
    }

    #[test]
    fn render_is_symmetric() {
        let f = PrimeField::new(5);
        assert_eq!(f.render(&4), "-1");
        assert_eq!(f.render(&2), "2");
        assert_eq!(PrimeField::new(2).render(&1), "1");
    }

    #[test]
    fn reduce_big_handles_negatives() {
        let f = PrimeField::new(7);
        assert_eq!(f.reduce_big(&BigInt::from(-1)), 6);
        assert_eq!(f.reduce_big(&BigInt::from(700_000_001i64)), 1);
    }

    proptest! {
        #[test]
        fn field_axioms(pi in 0usize..4, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let p = [2u32, 3, 5, 7][pi];
            let (a, b, c) = (Fp::new(p, a), Fp::new(p, b), Fp::new(p, c));
            prop_assert!(a.value() < p);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + (-a), Fp::zero(p));
            prop_assert_eq!(a * Fp::one(p), a);
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), Fp::one(p));
            }
            prop_assert_eq!(a.pow(p as u64), a);
        }
    }
}
