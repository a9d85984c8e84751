use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Pow;

use super::algebra::FpAlgebra;
use super::WittError;
use crate::ffpoly::{is_prime, var_names, FpPoly, Integers, PolyError, PrimeField, ZPoly};

/// Universal structure polynomials of `W_n` in characteristic `p`, kept both
/// over `Z` (as derived) and reduced mod `p` (as evaluated).
#[derive(Debug)]
pub struct WittPolyTable {
    p: u32,
    n: usize,
    ab_vars: Arc<[String]>,
    a_vars: Arc<[String]>,
    sum_z: Vec<ZPoly>,
    prod_z: Vec<ZPoly>,
    diff_z: Vec<ZPoly>,
    neg_z: Vec<ZPoly>,
    sum: Vec<FpPoly>,
    prod: Vec<FpPoly>,
    diff: Vec<FpPoly>,
    neg: Vec<FpPoly>,
}

/// The operation whose ghost image a structure polynomial reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittOp {
    Sum,
    Product,
    Difference,
    Negation,
}

impl WittOp {
    pub const ALL: [WittOp; 4] = [WittOp::Sum, WittOp::Product, WittOp::Difference, WittOp::Negation];

    pub fn name(&self) -> &'static str {
        match self {
            WittOp::Sum => "sum",
            WittOp::Product => "product",
            WittOp::Difference => "difference",
            WittOp::Negation => "negation",
        }
    }

    fn binary(&self) -> bool {
        !matches!(self, WittOp::Negation)
    }
}

fn ab_names(n: usize) -> Arc<[String]> {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).chain((0..n).map(|i| format!("b{i}"))).collect();
    var_names(&names)
}

fn a_names(n: usize) -> Arc<[String]> {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    var_names(&names)
}

/// `w_N(t) = sum_{i <= N} p^i t_i^{p^{N-i}}` where `t_i` is variable `offset + i`.
pub fn ghost_component(p: u32, vars: &Arc<[String]>, offset: usize, big_n: usize) -> ZPoly {
    let mut out = ZPoly::zero(Integers, vars.clone());
    for i in 0..=big_n {
        let t = ZPoly::var(Integers, vars.clone(), offset + i);
        let e = (p as u64).pow((big_n - i) as u32);
        let c = BigInt::from(p).pow(i as u32);
        out = out.add(&t.pow(e).scale(&c));
    }
    out
}

/// Ghost component of a vector of integer polynomials.
pub fn ghost_of(p: u32, comps: &[ZPoly], big_n: usize) -> ZPoly {
    let mut out = comps[0].zero_like();
    for (i, c) in comps.iter().enumerate().take(big_n + 1) {
        let e = (p as u64).pow((big_n - i) as u32);
        let k = BigInt::from(p).pow(i as u32);
        out = out.add(&c.pow(e).scale(&k));
    }
    out
}

fn ghost_target(p: u32, op: WittOp, vars: &Arc<[String]>, n: usize, big_n: usize) -> ZPoly {
    let wa = ghost_component(p, vars, 0, big_n);
    if !op.binary() {
        return wa.neg();
    }
    let wb = ghost_component(p, vars, n, big_n);
    match op {
        WittOp::Sum => wa.add(&wb),
        WittOp::Product => wa.mul(&wb),
        WittOp::Difference => wa.sub(&wb),
        WittOp::Negation => unreachable!(),
    }
}

/// Solve `w_N(res) = target_N` for `N < n` by the ghost recursion
/// `res_N = (target_N - sum_{i<N} p^i res_i^{p^{N-i}}) / p^N`.
fn solve_ghost(p: u32, targets: &[ZPoly]) -> Result<Vec<ZPoly>, PolyError> {
    let mut res: Vec<ZPoly> = Vec::with_capacity(targets.len());
    let mut powers: Vec<ZPoly> = Vec::with_capacity(targets.len());
    for (big_n, target) in targets.iter().enumerate() {
        let mut acc = target.clone();
        for (i, pw) in powers.iter_mut().enumerate() {
            *pw = pw.pow(p as u64);
            acc = acc.sub(&pw.scale(&BigInt::from(p).pow(i as u32)));
        }
        let r = acc.exact_div_by_int(&BigInt::from(p).pow(big_n as u32))?;
        powers.push(r.clone());
        res.push(r);
    }
    Ok(res)
}

impl WittPolyTable {
    pub fn build(p: u32, n: usize) -> Result<Self, WittError> {
        if !is_prime(p) {
            return Err(WittError::NotPrime(p));
        }
        if n == 0 {
            return Err(WittError::ZeroLength);
        }
        let ab = ab_names(n);
        let a = a_names(n);
        let derive = |op: WittOp| -> Result<Vec<ZPoly>, WittError> {
            let vars = if op.binary() { &ab } else { &a };
            let targets: Vec<ZPoly> = (0..n).map(|k| ghost_target(p, op, vars, n, k)).collect();
            solve_ghost(p, &targets).map_err(|e| WittError::Derivation { p, n, op: op.name(), source: e })
        };
        let sum_z = derive(WittOp::Sum)?;
        let prod_z = derive(WittOp::Product)?;
        let diff_z = derive(WittOp::Difference)?;
        let neg_z = derive(WittOp::Negation)?;
        let field = PrimeField::new(p);
        let red = |v: &[ZPoly]| v.iter().map(|q| q.reduce_mod(field)).collect::<Vec<_>>();
        Ok(WittPolyTable {
            p,
            n,
            sum: red(&sum_z),
            prod: red(&prod_z),
            diff: red(&diff_z),
            neg: red(&neg_z),
            ab_vars: ab,
            a_vars: a,
            sum_z,
            prod_z,
            diff_z,
            neg_z,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Variables `a_0..a_{n-1}, b_0..b_{n-1}` of the binary tables.
    pub fn binary_vars(&self) -> &Arc<[String]> {
        &self.ab_vars
    }

    /// Variables `a_0..a_{n-1}` of the negation table.
    pub fn unary_vars(&self) -> &Arc<[String]> {
        &self.a_vars
    }

    pub fn sum_polys(&self) -> &[FpPoly] {
        &self.sum
    }

    pub fn prod_polys(&self) -> &[FpPoly] {
        &self.prod
    }

    pub fn diff_polys(&self) -> &[FpPoly] {
        &self.diff
    }

    pub fn neg_polys(&self) -> &[FpPoly] {
        &self.neg
    }

    pub fn polys(&self, op: WittOp) -> &[FpPoly] {
        match op {
            WittOp::Sum => &self.sum,
            WittOp::Product => &self.prod,
            WittOp::Difference => &self.diff,
            WittOp::Negation => &self.neg,
        }
    }

    /// The characteristic-zero polynomials before reduction mod `p`.
    pub fn integer_polys(&self, op: WittOp) -> &[ZPoly] {
        match op {
            WittOp::Sum => &self.sum_z,
            WittOp::Product => &self.prod_z,
            WittOp::Difference => &self.diff_z,
            WittOp::Negation => &self.neg_z,
        }
    }

    /// Recompute every ghost component from the integer polynomials and compare
    /// it with the ghost image of the operation. Returns the first failing
    /// `(op, N)`.
    pub fn check_ghost_compatibility(&self) -> Result<(), (WittOp, usize)> {
        for op in WittOp::ALL {
            let polys = self.integer_polys(op);
            let vars = if op.binary() { &self.ab_vars } else { &self.a_vars };
            for big_n in 0..self.n {
                let lhs = ghost_of(self.p, polys, big_n);
                let rhs = ghost_target(self.p, op, vars, self.n, big_n);
                if lhs != rhs {
                    return Err((op, big_n));
                }
            }
        }
        Ok(())
    }
}

type Cache = Mutex<HashMap<(u32, usize), Arc<WittPolyTable>>>;

/// Shared, lazily built table for `(p, n)`.
pub fn witt_table(p: u32, n: usize) -> Result<Arc<WittPolyTable>, WittError> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.get(&(p, n)) {
        return Ok(t.clone());
    }
    let t = Arc::new(WittPolyTable::build(p, n)?);
    guard.insert((p, n), t.clone());
    Ok(t)
}

/// Evaluates table polynomials at fixed inputs, sharing variable powers
/// between calls.
pub(crate) struct Evaluator<'a, E: FpAlgebra> {
    vals: &'a [&'a E],
    zero: Vec<bool>,
    powers: HashMap<(usize, u32), E>,
}

impl<'a, E: FpAlgebra> Evaluator<'a, E> {
    pub(crate) fn new(vals: &'a [&'a E]) -> Self {
        let zero = vals.iter().map(|v| v.is_zero()).collect();
        Evaluator { vals, zero, powers: HashMap::new() }
    }

    fn power(&mut self, i: usize, e: u32) -> E {
        if e == 1 {
            return self.vals[i].clone();
        }
        if let Some(v) = self.powers.get(&(i, e)) {
            return v.clone();
        }
        let v = self.vals[i].pow(e as u64);
        self.powers.insert((i, e), v.clone());
        v
    }

    pub(crate) fn eval(&mut self, poly: &FpPoly, proto: &E) -> E {
        let mut acc = proto.zero_like();
        'terms: for (m, c) in poly.terms() {
            let exps = m.exps();
            if exps.iter().enumerate().any(|(i, &e)| e > 0 && self.zero[i]) {
                continue 'terms;
            }
            let mut t: Option<E> = None;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = self.power(i, e);
                t = Some(match t {
                    None => pw,
                    Some(t) => t.mul(&pw),
                });
            }
            let t = match t {
                None => proto.one_like(),
                Some(t) => t,
            };
            let t = if *c == 1 { t } else { t.scale(*c) };
            acc.add_assign(t);
        }
        acc
    }
}
