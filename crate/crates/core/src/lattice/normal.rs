//! Smith and Hermite normal forms over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m).map(|j| row.iter().zip(b.iter()).fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])).collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Smith form `U A V = D` of a square matrix: returns the diagonal
/// `d_1 | d_2 | ... | d_n` (non-negative) with `U` and `V` unimodular.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith(a: &IntMatrix) -> Smith {
    let n = a.len();
    let mut m = a.clone();
    let mut u = identity(n);
    let mut v = identity(n);
    for k in 0..n {
        loop {
            // pivot: smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(m, u, v);
            };
            m.swap(k, pi);
            u.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            for row in v.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                let q = m[i][k].div_floor(&m[k][k]);
                if !q.is_zero() {
                    row_axpy(&mut m, i, k, &q);
                    row_axpy(&mut u, i, k, &q);
                }
                clean &= m[i][k].is_zero();
            }
            for j in k + 1..n {
                let q = m[k][j].div_floor(&m[k][k]);
                if !q.is_zero() {
                    col_axpy(&mut m, j, k, &q);
                    col_axpy(&mut v, j, k, &q);
                }
                clean &= m[k][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[k][k]).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = -BigInt::one();
                    row_axpy(&mut m, k, i, &one);
                    row_axpy(&mut u, k, i, &one);
                }
                None => break,
            }
        }
    }
    finish(m, u, v)
}

fn finish(mut m: IntMatrix, mut u: IntMatrix, v: IntMatrix) -> Smith {
    let n = m.len();
    for k in 0..n {
        if m[k][k].is_negative() {
            for x in m[k].iter_mut() {
                *x = -&*x;
            }
            for x in u[k].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Smith { diag: (0..n).map(|k| m[k][k].clone()).collect(), u, v }
}

/// `row_i -= q * row_k`
fn row_axpy(m: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    let src = m[k].clone();
    for (x, s) in m[i].iter_mut().zip(src.iter()) {
        *x -= q * s;
    }
}

/// `col_j -= q * col_k`
fn col_axpy(m: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[k].clone();
        row[j] -= q * s;
    }
}

/// Row Hermite normal form: a basis of the row lattice of `a`, upper
/// triangular with positive pivots and reduced entries above each pivot.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut rows: IntMatrix = a.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut out: IntMatrix = Vec::new();
    let mut col = 0;
    while col < ncols && !rows.is_empty() {
        // gcd-combine all rows with a nonzero entry in this column
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows {
            if r[col].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let e = p[col].extended_gcd(&r[col]);
                    let (a1, b1) = (&p[col] / &e.gcd, &r[col] / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(r.iter()).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(r.iter()).map(|(x, y)| &a1 * y - &b1 * x).collect();
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(p);
        }
        col += 1;
    }
    // reduce above the pivots
    for i in 0..out.len() {
        let pc = out[i].iter().position(|x| !x.is_zero()).expect("nonzero row");
        for k in 0..i {
            let q = out[k][pc].div_floor(&out[i][pc]);
            if !q.is_zero() {
                let src = out[i].clone();
                for (x, s) in out[k].iter_mut().zip(src.iter()) {
                    *x -= &q * s;
                }
            }
        }
    }
    out
}
