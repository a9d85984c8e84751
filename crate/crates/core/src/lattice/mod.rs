//! Integer lattices given by Gram matrices: discriminant forms, gluing along
//! anti-isometries and the search for unimodular overlattices.

mod disc;
mod glue;
pub mod normal;
mod overlattice;

pub use disc::DiscForm;
pub use glue::{glue, GlueOutcome, GluePair, GlueSpec, LatticeSource};
pub use overlattice::{unimodular_overlattice_exists, Overlattice, GUARD};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::{Dynkin, DynkinError, Family};
use normal::{determinant, to_big};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is empty")]
    Empty,
    #[error("Gram matrix is not square and symmetric")]
    NotSymmetric,
    #[error("degenerate lattice (determinant 0)")]
    Degenerate,
    #[error("element {0:?} is out of range for the group")]
    OutOfRange(Vec<u64>),
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("search guard exceeded: group of order {0}")]
    Guard(u64),
    #[error("glue data rejected: {0}")]
    Glue(String),
    #[error("output check failed: {0}")]
    Check(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
}

/// A non-degenerate integral lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for GramLattice {
    type Error = LatticeError;

    fn try_from(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        GramLattice::new(gram)
    }
}

impl From<GramLattice> for Vec<Vec<i64>> {
    fn from(l: GramLattice) -> Self {
        l.gram
    }
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if gram.iter().any(|r| r.len() != n) || (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::NotSymmetric);
        }
        let l = GramLattice { gram };
        if l.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(l)
    }

    /// Parse a JSON array of integer rows.
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        let gram: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|_| LatticeError::Parse(s.to_string()))?;
        GramLattice::new(gram)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        determinant(&to_big(&self.gram))
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == BigInt::from(1)
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        GramLattice { gram }
    }

    /// `v . w` for rational coordinate vectors in the lattice basis.
    pub fn pair(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if self.gram[i][j] != 0 && !wj.is_zero() {
                    acc += vi * wj * BigRational::from_integer(BigInt::from(self.gram[i][j]));
                }
            }
        }
        acc
    }

    /// `(n_+, n_-)` by exact symmetric elimination.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> =
            self.gram.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    a.swap(i, k);
                    for row in a.iter_mut() {
                        row.swap(i, k);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // all remaining diagonal entries vanish: e_k += e_j gives 2 a_kj
                    for c in 0..n {
                        let t = a[j][c].clone();
                        a[k][c] += t;
                    }
                    for row in a.iter_mut() {
                        let t = row[j].clone();
                        row[k] += t;
                    }
                } else {
                    return Err(LatticeError::Degenerate);
                }
            }
            let piv = a[k][k].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
            for i in k + 1..n {
                a[k][i] = BigRational::zero();
                a[i][k] = BigRational::zero();
            }
        }
        Ok((pos, neg))
    }
}

impl std::fmt::Display for GramLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.gram).expect("integers serialize"))
    }
}

/// Negative-definite root lattice: `e_i^2 = -2`, `e_i . e_j = 1` on edges.
pub fn dynkin_gram(s: Dynkin) -> GramLattice {
    let n = s.rank() as usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match s.family {
        Family::A => edges.extend((1..n).map(|i| (i - 1, i))),
        Family::D => {
            // chain e_0 - ... - e_{n-2}, with e_{n-1} attached to e_{n-3}
            edges.extend((1..n - 1).map(|i| (i - 1, i)));
            edges.push((n - 3, n - 1));
        }
        Family::E => {
            // chain e_0 - ... - e_{n-2}, with e_{n-1} attached to e_2
            edges.extend((1..n - 1).map(|i| (i - 1, i)));
            edges.push((2, n - 1));
        }
    }
    let mut gram = vec![vec![0i64; n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (i, j) in edges {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    GramLattice { gram }
}

/// The lattice spanned by `L` and the extra vectors of `L (x) Q`: returns
/// the Gram matrix on a Hermite basis and that basis in `L` coordinates.
pub(crate) fn extend_lattice(
    l: &GramLattice,
    extra: &[Vec<BigRational>],
) -> Result<(GramLattice, Vec<Vec<BigRational>>), LatticeError> {
    use num_integer::Integer;
    let n = l.rank();
    let den = extra.iter().flatten().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let mut rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect()).collect();
    for v in extra {
        if v.len() != n {
            return Err(LatticeError::Dimension { expected: n, got: v.len() });
        }
        rows.push(v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect());
    }
    let h = normal::hermite_rows(&rows);
    let basis: Vec<Vec<BigRational>> =
        h.iter().map(|r| r.iter().map(|x| BigRational::new(x.clone(), den.clone())).collect()).collect();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = l.pair(&basis[i], &basis[j]);
            if !x.is_integer() {
                return Err(LatticeError::Check(format!("non-integral product {}", show_rational(&x))));
            }
            gram[i][j] = x.to_integer().to_i64().ok_or_else(|| LatticeError::Check("entry overflow".into()))?;
        }
    }
    Ok((GramLattice::new(gram)?, basis))
}

/// Parse a rational vector entry such as `"3/7"` or `"-2"`.
pub fn parse_rational(s: &str) -> Result<BigRational, LatticeError> {
    let bad = || LatticeError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn show_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn to_u64(x: &BigInt) -> Result<u64, LatticeError> {
    x.to_u64().ok_or(LatticeError::Guard(u64::MAX))
}

#[cfg(test)]
mod tests;
