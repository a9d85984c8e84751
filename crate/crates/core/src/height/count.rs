use serde::{Deserialize, Serialize};

use super::gf::GfQ;
use super::HeightError;
use crate::ffpoly::{parse_poly, var_names, FpPoly, PrimeField};

/// A polynomial stored as text with its variable names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySpec {
    pub vars: Vec<String>,
    pub poly: String,
}

impl PolySpec {
    pub fn new(vars: &[&str], poly: &str) -> Self {
        PolySpec { vars: vars.iter().map(|s| s.to_string()).collect(), poly: poly.to_string() }
    }

    pub fn parse(&self, p: u32) -> Result<FpPoly, HeightError> {
        Ok(parse_poly(PrimeField::new(p), var_names(&self.vars), &self.poly)?)
    }
}

/// Surface models for point counting and the ordinarity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceModel {
    /// `f = 0` in `P(n_0, n_1, n_2, n_3)`.
    WeightedHypersurface { characteristic: u32, weights: [u64; 4], f: PolySpec },
    /// An elliptic surface over `P^1`: the affine chart over `t`, the fiber at
    /// `t = infinity` in its own affine chart, and the points of each fiber
    /// at infinity of the affine charts (the zero section of a Weierstrass
    /// model contributes one).
    TwoChart { characteristic: u32, chart1: PolySpec, chart2_at_infinity: PolySpec, points_at_infinity_per_fiber: u32 },
}

impl SurfaceModel {
    pub fn characteristic(&self) -> u32 {
        match self {
            SurfaceModel::WeightedHypersurface { characteristic, .. } => *characteristic,
            SurfaceModel::TwoChart { characteristic, .. } => *characteristic,
        }
    }

    /// Parse the polynomials and check their shape.
    pub fn validate(&self) -> Result<(), HeightError> {
        let p = self.characteristic();
        if !crate::ffpoly::is_prime(p) {
            return Err(HeightError::BadModel(format!("characteristic {p} is not prime")));
        }
        match self {
            SurfaceModel::WeightedHypersurface { weights, f, .. } => {
                let f = f.parse(p)?;
                weighted_degree_check(&f, weights).map(|_| ())
            }
            SurfaceModel::TwoChart { chart1, chart2_at_infinity, .. } => {
                if chart1.parse(p)?.nvars() != 3 {
                    return Err(HeightError::BadModel("chart1 needs three variables".into()));
                }
                if chart2_at_infinity.parse(p)?.nvars() != 2 {
                    return Err(HeightError::BadModel("chart2_at_infinity needs two variables".into()));
                }
                Ok(())
            }
        }
    }
}

/// Weighted degree of `f`, which must be homogeneous of degree `sum n_i`.
pub fn weighted_degree_check(f: &FpPoly, weights: &[u64; 4]) -> Result<u64, HeightError> {
    if f.nvars() != 4 {
        return Err(HeightError::BadModel(format!("expected 4 variables, got {}", f.nvars())));
    }
    let d = f
        .weighted_homogeneous_degree(weights)
        .ok_or_else(|| HeightError::BadModel("f is not weighted-homogeneous".into()))?;
    let sum: u64 = weights.iter().sum();
    if d != sum {
        return Err(HeightError::DegreeMismatch { degree: d, weight_sum: sum });
    }
    Ok(d)
}

/// `f` compiled for evaluation over `F_q`.
struct Compiled {
    terms: Vec<(u32, Vec<(usize, u64)>)>,
}

impl Compiled {
    fn new(f: &FpPoly) -> Self {
        let terms = f
            .terms()
            .map(|(m, &c)| {
                let exps = m.exps().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e as u64)).collect();
                (c, exps)
            })
            .collect();
        Compiled { terms }
    }

    fn eval(&self, k: &GfQ, pt: &[u32]) -> u32 {
        let mut acc = 0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for &(i, e) in exps {
                t = k.mul(t, k.pow(pt[i], e));
                if t == 0 {
                    break;
                }
            }
            acc = k.add(acc, t);
        }
        acc
    }

    /// Number of zeros in `F_q^n` whose coordinates outside `support` are 0.
    fn count_zeros(&self, k: &GfQ, n: usize, support: &[bool]) -> u64 {
        use rayon::prelude::*;
        let q = k.q();
        let free: Vec<usize> = (0..n).filter(|&i| support[i]).collect();
        if free.is_empty() {
            return (self.eval(k, &vec![0; n]) == 0) as u64;
        }
        let rest = &free[1..];
        (0..q)
            .into_par_iter()
            .map(|a| {
                let mut pt = vec![0u32; n];
                pt[free[0]] = a;
                let mut count = 0u64;
                let total = (q as u64).pow(rest.len() as u32);
                for idx in 0..total {
                    let mut r = idx;
                    for &i in rest {
                        pt[i] = (r % q as u64) as u32;
                        r /= q as u64;
                    }
                    if self.eval(k, &pt) == 0 {
                        count += 1;
                    }
                }
                count
            })
            .sum()
    }
}

/// `#X(F_q)` by exhaustive enumeration.
///
/// Weighted hypersurfaces are counted as `F_q^*`-orbits on nonzero cone
/// solutions via Burnside: `lambda` fixes exactly the points supported on
/// coordinates with `lambda^{n_i} = 1`.
pub fn count_points(model: &SurfaceModel, q: u32) -> Result<u64, HeightError> {
    model.validate()?;
    let k = GfQ::new(q)?;
    let p = model.characteristic();
    if k.p() != p {
        return Err(HeightError::BadModel(format!("q = {q} is not a power of {p}")));
    }
    match model {
        SurfaceModel::TwoChart { chart1, chart2_at_infinity, points_at_infinity_per_fiber, .. } => {
            if (q as u64).pow(3) > 1 << 30 {
                return Err(HeightError::Guard(format!("q^3 > 2^30 for q = {q}")));
            }
            let c1 = Compiled::new(&chart1.parse(p)?).count_zeros(&k, 3, &[true; 3]);
            let c2 = Compiled::new(&chart2_at_infinity.parse(p)?).count_zeros(&k, 2, &[true; 2]);
            Ok(c1 + c2 + (q as u64 + 1) * *points_at_infinity_per_fiber as u64)
        }
        SurfaceModel::WeightedHypersurface { weights, f, .. } => {
            if (q as u64).pow(4) > 1 << 32 {
                return Err(HeightError::Guard(format!("q^4 > 2^32 for q = {q}")));
            }
            let f = Compiled::new(&f.parse(p)?);
            let mut by_support: std::collections::BTreeMap<[bool; 4], u64> = Default::default();
            for e in 0..(q - 1) as u64 {
                // lambda = g^e fixes coordinate i iff (q - 1) | e * n_i
                let support = weights.map(|n| (e * n) % (q as u64 - 1) == 0);
                *by_support.entry(support).or_default() += 1;
            }
            let mut total = 0u64;
            for (support, mult) in by_support {
                // drop the origin, which is always a cone solution
                let nonzero = f.count_zeros(&k, 4, &support) - 1;
                total += mult * nonzero;
            }
            Ok(total / (q as u64 - 1))
        }
    }
}
