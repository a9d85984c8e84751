use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::normal::{smith, to_big};
use super::{to_u64, GramLattice, LatticeError};

/// The discriminant group `L^*/L = (+) Z/d_i` with its bilinear form `b`
/// (values in `Q/Z`) and quadratic form `q` (values in `Q/2Z`; in `Q/Z` when
/// `L` is odd, where only `v^2 mod 1` is well defined).
///
/// Elements are coordinate vectors `c` with `0 <= c_i < d_i` on the
/// Smith generators.
#[derive(Clone, Debug)]
pub struct DiscForm {
    lattice: GramLattice,
    orders: Vec<u64>,
    gens: Vec<Vec<BigRational>>,
    // rows of U for the nontrivial factors: coordinates of x in Z^n / G Z^n
    u_rows: Vec<Vec<BigInt>>,
    exponent: u64,
    // e * q(g_i) mod (modulus * e) and e * b(g_i, g_j) mod e
    qnum: Vec<i64>,
    bnum: Vec<Vec<i64>>,
}

impl DiscForm {
    pub fn new(lattice: &GramLattice) -> Result<Self, LatticeError> {
        let g = to_big(lattice.gram());
        let s = smith(&g);
        let n = lattice.rank();
        let mut orders = Vec::new();
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        let mut u_rows = Vec::new();
        for k in 0..n {
            let d = &s.diag[k];
            if d.is_zero() {
                return Err(LatticeError::Degenerate);
            }
            if d.is_one() {
                continue;
            }
            orders.push(to_u64(d)?);
            // G^{-1} U^{-1} = V D^{-1}: column k of V over d_k
            gens.push((0..n).map(|i| BigRational::new(s.v[i][k].clone(), d.clone())).collect());
            u_rows.push(s.u[k].clone());
        }
        let exponent = orders.iter().copied().max().unwrap_or(1);
        let e = BigRational::from_integer(BigInt::from(exponent));
        let modulus = if lattice.is_even() { 2 } else { 1 };
        let reduce = |x: BigRational, m: i64| -> i64 {
            let y = x * &e;
            debug_assert!(y.is_integer());
            let v: i64 = y.to_integer().mod_floor(&BigInt::from(m)).try_into().expect("bounded");
            v
        };
        let k = gens.len();
        let e64 = exponent as i64;
        let qnum = gens.iter().map(|v| reduce(lattice.pair(v, v), modulus * e64)).collect();
        let bnum = (0..k).map(|i| (0..k).map(|j| reduce(lattice.pair(&gens[i], &gens[j]), e64)).collect()).collect();
        Ok(DiscForm { lattice: lattice.clone(), orders, gens, u_rows, exponent, qnum, bnum })
    }

    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    /// Invariant factors `d_1 | d_2 | ...` greater than 1.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Lifts of the generators to `L (x) Q`, in the lattice basis.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.gens
    }

    /// 2 for even lattices, 1 for odd ones.
    pub fn q_modulus(&self) -> i64 {
        if self.lattice.is_even() {
            2
        } else {
            1
        }
    }

    fn check(&self, c: &[u64]) -> Result<(), LatticeError> {
        if c.len() != self.orders.len() || c.iter().zip(&self.orders).any(|(x, d)| x >= d) {
            return Err(LatticeError::OutOfRange(c.to_vec()));
        }
        Ok(())
    }

    /// A lift of the element to `L^*`.
    pub fn lift(&self, c: &[u64]) -> Result<Vec<BigRational>, LatticeError> {
        self.check(c)?;
        let mut v = vec![BigRational::zero(); self.lattice.rank()];
        for (ci, g) in c.iter().zip(&self.gens) {
            if *ci == 0 {
                continue;
            }
            let s = BigRational::from_integer(BigInt::from(*ci));
            for (x, gi) in v.iter_mut().zip(g) {
                *x += &s * gi;
            }
        }
        Ok(v)
    }

    /// The class of `v` in `L^*/L`.
    pub fn coords(&self, v: &[BigRational]) -> Result<Vec<u64>, LatticeError> {
        let n = self.lattice.rank();
        if v.len() != n {
            return Err(LatticeError::Dimension { expected: n, got: v.len() });
        }
        // x = G v in the dual basis must be integral
        let mut x = Vec::with_capacity(n);
        for row in self.lattice.gram() {
            let mut acc = BigRational::zero();
            for (g, vi) in row.iter().zip(v) {
                if *g != 0 {
                    acc += vi * BigRational::from_integer(BigInt::from(*g));
                }
            }
            if !acc.is_integer() {
                return Err(LatticeError::NotInDual);
            }
            x.push(acc.to_integer());
        }
        Ok(self
            .u_rows
            .iter()
            .zip(&self.orders)
            .map(|(u, &d)| {
                let y: BigInt = u.iter().zip(&x).map(|(a, b)| a * b).sum();
                to_u64(&y.mod_floor(&BigInt::from(d))).expect("reduced")
            })
            .collect())
    }

    /// `e * q(c)` reduced mod `modulus * e`.
    pub fn q_num(&self, c: &[u64]) -> i64 {
        let e = self.exponent as i128;
        let m = self.q_modulus() as i128 * e;
        let mut acc: i128 = 0;
        for i in 0..c.len() {
            if c[i] == 0 {
                continue;
            }
            let ci = c[i] as i128;
            acc = (acc + ci * ci % m * self.qnum[i] as i128) % m;
            for j in i + 1..c.len() {
                acc = (acc + 2 * (ci * c[j] as i128 % e) * self.bnum[i][j] as i128) % m;
            }
        }
        acc as i64
    }

    /// `e * b(c, d)` reduced mod `e`.
    pub fn b_num(&self, c: &[u64], d: &[u64]) -> i64 {
        let e = self.exponent as i128;
        let mut acc: i128 = 0;
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &dj) in d.iter().enumerate() {
                if dj != 0 {
                    acc = (acc + (ci as i128 * dj as i128 % e) * self.bnum[i][j] as i128) % e;
                }
            }
        }
        acc as i64
    }

    /// `q(c)` as a rational in `[0, 2)` (`[0, 1)` for odd lattices).
    pub fn q_value(&self, c: &[u64]) -> Result<BigRational, LatticeError> {
        self.check(c)?;
        Ok(BigRational::new(self.q_num(c).into(), (self.exponent as i64).into()))
    }

    /// `b(c, d)` as a rational in `[0, 1)`.
    pub fn b_value(&self, c: &[u64], d: &[u64]) -> Result<BigRational, LatticeError> {
        self.check(c)?;
        self.check(d)?;
        Ok(BigRational::new(self.b_num(c, d).into(), (self.exponent as i64).into()))
    }

    pub fn add(&self, c: &[u64], d: &[u64]) -> Vec<u64> {
        c.iter().zip(d).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect()
    }

    pub fn scale(&self, k: u64, c: &[u64]) -> Vec<u64> {
        c.iter().zip(&self.orders).map(|(a, n)| (a % n) * (k % n) % n).collect()
    }

    pub fn element_order(&self, c: &[u64]) -> u64 {
        c.iter().zip(&self.orders).fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n))))
    }

    /// All elements, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let total = self.order();
        (0..total).map(move |mut idx| {
            self.orders
                .iter()
                .map(|&d| {
                    let x = idx % d;
                    idx /= d;
                    x
                })
                .collect()
        })
    }
}
