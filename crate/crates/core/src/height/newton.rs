use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::count::{weighted_degree_check, SurfaceModel};
use super::HeightError;

/// Outcome of the point-count height test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightTest {
    /// `a(m)` with `#Y(F_{q^m}) = 1 + q^{2m} + a(m) q^m`.
    pub a: Vec<String>,
    /// Elementary symmetric values `s(j)`.
    pub s: Vec<String>,
    /// `gt[n - 1]`: whether `height > n`.
    pub gt: Vec<bool>,
    /// The height if the data pins it down: the first `n` with `s(n)` not integral.
    pub height: Option<u32>,
}

/// `a(m) = (count_m - 1 - q^{2m}) / q^m`.
pub fn a_values(counts: &[u64], q: u64) -> Vec<BigRational> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let qm = BigInt::from(q).pow(i as u32 + 1);
            let num = BigInt::from(c) - BigInt::one() - &qm * &qm;
            BigRational::new(num, qm)
        })
        .collect()
}

/// Elementary symmetric values from power sums by Newton's identities:
/// `j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} p_i`.
pub fn elementary_from_power_sums(p: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::one()];
    for j in 1..=p.len() {
        let mut acc = BigRational::zero();
        for i in 1..=j {
            let term = &e[j - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(j)));
    }
    e.remove(0);
    e
}

/// The inverse direction, used to synthesize data.
pub fn power_sums_from_elementary(e: &[BigRational]) -> Vec<BigRational> {
    let mut p: Vec<BigRational> = Vec::with_capacity(e.len());
    for j in 1..=e.len() {
        // p_j = sum_{i=1}^{j-1} (-1)^{i-1} e_i p_{j-i} + (-1)^{j-1} j e_j
        let mut acc = BigRational::zero();
        for i in 1..j {
            let term = &e[i - 1] * &p[j - i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let last = &e[j - 1] * BigRational::from_integer(BigInt::from(j));
        if j % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    p
}

fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Point counts over `F_{q^m}`, `m = 1..=n`: `height > n` iff `s(1..=n)` are
/// all integers.
pub fn height_gt_test(counts: &[u64], q: u64) -> HeightTest {
    let a = a_values(counts, q);
    let s = elementary_from_power_sums(&a);
    let mut gt = Vec::with_capacity(s.len());
    let mut all = true;
    for x in &s {
        all &= x.is_integer();
        gt.push(all);
    }
    let height = gt.iter().position(|&g| !g).map(|i| i as u32 + 1);
    HeightTest { a: a.iter().map(show).collect(), s: s.iter().map(show).collect(), gt, height }
}

/// Point counts `1 + q^{2m} + a(m) q^m` for `a` the power sums of roots
/// with elementary symmetric values `s`. Fails if a count is not a
/// non-negative integer.
pub fn synthesize_counts(s: &[BigRational], q: u64) -> Option<Vec<u64>> {
    power_sums_from_elementary(s)
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let qm = BigInt::from(q).pow(i as u32 + 1);
            let c = BigRational::from_integer(BigInt::one() + &qm * &qm) + a * BigRational::from_integer(qm);
            if !c.is_integer() || c.is_negative() {
                return None;
            }
            c.to_integer().try_into().ok()
        })
        .collect()
}

/// Ordinarity of a weighted K3 hypersurface: the coefficient of
/// `(x_0 x_1 x_2 x_3)^{p-1}` in `f^{p-1}` is nonzero.
pub fn ordinary_test(model: &SurfaceModel) -> Result<bool, HeightError> {
    let SurfaceModel::WeightedHypersurface { characteristic: p, weights, f } = model else {
        return Err(HeightError::BadModel("ordinarity needs a weighted hypersurface".into()));
    };
    let f = f.parse(*p)?;
    weighted_degree_check(&f, weights)?;
    let g = f.pow(*p as u64 - 1);
    Ok(g.coefficient_of(&[p - 1; 4])? != 0)
}
