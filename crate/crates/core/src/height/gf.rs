//! Small finite fields `F_q`, `q = p^k`, through log/antilog tables.
//!
//! Elements are integers `0..q` read as base-`p` digit vectors, i.e.
//! polynomials in a primitive root of a fixed primitive polynomial. The
//! integers `0..p` are the prime field.

use super::HeightError;
use crate::ffpoly::is_prime;

/// Largest field size with tables.
pub const MAX_Q: u32 = 1 << 10;

#[derive(Clone, Debug)]
pub struct GfQ {
    p: u32,
    k: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u16>,
}

/// `q = p^k` with `p` prime, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, k))
}

impl GfQ {
    pub fn new(q: u32) -> Result<Self, HeightError> {
        let (p, k) = prime_power(q).ok_or(HeightError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(HeightError::Guard(format!("field size {q} exceeds {MAX_Q}")));
        }
        let digits = |mut v: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0, |acc, &x| acc * p + x);
        let mut add = vec![0u16; (q * q) as usize];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let s: Vec<u32> = da.iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u16;
            }
        }
        // Multiplication by the root t modulo a monic degree-k polynomial
        // with low coefficients `c`: t^k = -sum c_i t^i.
        let times_t = |v: u32, c: &[u32]| -> u32 {
            let d = digits(v);
            let top = d[k as usize - 1];
            let mut out = vec![0u32; k as usize];
            for i in (1..k as usize).rev() {
                out[i] = d[i - 1];
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + (p - top) * c[i] % p) % p;
            }
            undigits(&out)
        };
        for code in 0..q {
            let c = digits(code);
            if c[0] == 0 && k > 1 {
                continue;
            }
            // powers of t; primitive iff the order is q - 1
            let one = 1u32;
            let t = if k == 1 { (p - c[0]) % p } else { p };
            if t == 0 {
                continue;
            }
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut cur = one;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && cur == one {
                    ok = false;
                    break;
                }
                exp.push(cur);
                cur = if k == 1 { cur * t % p } else { times_t(cur, &c) };
            }
            if !ok || cur != one {
                continue;
            }
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return Ok(GfQ { p, k, q, exp, log, add });
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    /// The generator raised to `e`.
    pub fn exp(&self, e: u64) -> u32 {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }
}
