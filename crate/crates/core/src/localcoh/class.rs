use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::CohError;
use crate::chartring::{ChartElem, ChartRing, RingMap};
use crate::witt::{FpAlgebra, WittVec};

/// Canonical representative of a class in `H^2_m(W_n(A))`: every component is
/// residual.
#[derive(Clone, Debug, PartialEq)]
pub struct CohClass {
    chart: Arc<ChartRing>,
    comps: Vec<ChartElem>,
}

impl CohClass {
    pub fn zero(chart: &Arc<ChartRing>, n: usize) -> Self {
        assert!(n >= 1, "Witt length must be positive");
        CohClass { chart: chart.clone(), comps: vec![ChartElem::zero(chart); n] }
    }

    /// Wrap components that are already residual.
    pub fn from_residual(chart: &Arc<ChartRing>, comps: Vec<ChartElem>) -> Result<Self, CohError> {
        if comps.is_empty() {
            return Err(CohError::Witt(crate::witt::WittError::ZeroLength));
        }
        let mut out = Vec::with_capacity(comps.len());
        for (index, c) in comps.into_iter().enumerate() {
            if !c.is_residual() {
                return Err(CohError::NotResidual { index, elem: c.to_string() });
            }
            out.push(c.rehome(chart)?);
        }
        Ok(CohClass { chart: chart.clone(), comps: out })
    }

    /// The class of `(a_0, ..., a_{n-1})`.
    pub fn of(chart: &Arc<ChartRing>, comps: Vec<ChartElem>) -> Result<Self, CohError> {
        let comps = comps.into_iter().map(|c| c.rehome(chart)).collect::<Result<Vec<_>, _>>()?;
        Ok(reduce(&WittVec::new(comps)?))
    }

    /// The class of `V^i[a]` in `W_n`.
    pub fn of_supported(a: &ChartElem, n: usize, i: usize) -> Self {
        reduce(&WittVec::supported_at(a, n, i))
    }

    pub fn chart(&self) -> &Arc<ChartRing> {
        &self.chart
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[ChartElem] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ChartElem::is_empty)
    }

    pub fn to_witt(&self) -> WittVec<ChartElem> {
        WittVec::new(self.comps.clone()).expect("non-empty")
    }

    /// Witt sum of two classes.
    pub fn add(&self, other: &Self) -> Result<Self, CohError> {
        self.check_chart(&other.chart)?;
        Ok(reduce(&self.to_witt().try_add(&other.to_witt())?))
    }

    fn check_chart(&self, chart: &Arc<ChartRing>) -> Result<(), CohError> {
        if Arc::ptr_eq(&self.chart, chart) || *self.chart == **chart {
            Ok(())
        } else {
            Err(CohError::ChartMismatch { expected: chart.name().into(), found: self.chart.name().into() })
        }
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")]")
    }
}

impl Serialize for CohClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let comps: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        comps.serialize(s)
    }
}

/// Which non-residual part is removed first at each position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeelOrder {
    /// Terms with `j >= 0` first.
    XiFirst,
    /// Terms with `i >= 0, j < 0` first.
    EtaFirst,
}

pub fn reduce(v: &WittVec<ChartElem>) -> CohClass {
    reduce_with(v, PeelOrder::XiFirst)
}

pub fn reduce_with(v: &WittVec<ChartElem>, order: PeelOrder) -> CohClass {
    let n = v.len();
    let mut comps = v.components().to_vec();
    for i in 0..n {
        let (xi, eta, _) = comps[i].split();
        let parts = match order {
            PeelOrder::XiFirst => [xi, eta],
            PeelOrder::EtaFirst => [eta, xi],
        };
        for part in parts {
            if !part.is_empty() {
                // Vectors with disjoint supports add componentwise, so
                // x - V^i[a] only touches positions >= i, where it is
                // V^i of (x_i, ..., x_{n-1}) - [a] in W_{n-i}.
                let tail = WittVec::new(comps.split_off(i)).expect("i < n");
                comps.extend(tail.sub(&WittVec::teichmuller(&part, n - i)).into_components());
            }
        }
        debug_assert!(comps[i].is_residual());
    }
    let chart = v.component(0).ring().clone();
    CohClass { chart, comps }
}

/// `F(e)`: componentwise `p`-th powers, then reduce.
pub fn frobenius_class(e: &CohClass) -> CohClass {
    reduce(&e.to_witt().frobenius())
}

/// `f^*(e)` for a chart map `f`.
pub fn pullback_class(m: &RingMap, e: &CohClass) -> Result<CohClass, CohError> {
    e.check_chart(m.source())?;
    let comps = e.comps.iter().map(|c| m.apply(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(reduce(&WittVec::new(comps)?))
}

/// `[g] * e` for a polynomial `g`.
pub fn scalar_mul_class(g: &ChartElem, e: &CohClass) -> Result<CohClass, CohError> {
    if !g.is_polynomial() {
        return Err(CohError::NonPolynomialGenerator(g.to_string()));
    }
    let g = g.rehome(&e.chart)?;
    Ok(reduce(&e.to_witt().mul_teichmuller(&g)))
}

pub fn v_class(e: &CohClass) -> CohClass {
    let mut comps = Vec::with_capacity(e.n() + 1);
    comps.push(ChartElem::zero(&e.chart));
    comps.extend(e.comps.iter().cloned());
    CohClass { chart: e.chart.clone(), comps }
}

pub fn r_class(e: &CohClass) -> Result<CohClass, CohError> {
    if e.n() == 1 {
        return Err(CohError::Witt(crate::witt::WittError::RestrictionOfLengthOne));
    }
    Ok(CohClass { chart: e.chart.clone(), comps: e.comps[..e.n() - 1].to_vec() })
}

/// `c` in `F_p^*` with `a = [c] * b`, if any. Two zero classes give `Some(1)`.
pub fn unit_multiple(a: &CohClass, b: &CohClass) -> Option<u32> {
    if a.n() != b.n() || *a.chart != *b.chart {
        return None;
    }
    let p = a.chart.p();
    (1..p).find(|&c| {
        let g = ChartElem::constant(&b.chart, c as i64);
        scalar_mul_class(&g, b).map(|cb| cb == *a).unwrap_or(false)
    })
}

/// An ideal of the chart given by polynomial generators.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    chart: Arc<ChartRing>,
    generators: Vec<ChartElem>,
}

impl IdealSpec {
    pub fn new(chart: &Arc<ChartRing>, generators: Vec<ChartElem>) -> Result<Self, CohError> {
        if generators.is_empty() {
            return Err(CohError::EmptyIdeal);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !g.is_polynomial() {
                return Err(CohError::NonPolynomialGenerator(g.to_string()));
            }
            gens.push(g.rehome(chart)?);
        }
        Ok(IdealSpec { chart: chart.clone(), generators: gens })
    }

    /// `(x, y^j, z)`; for `j = 1` the maximal ideal. Rank-1 charts omit `z`.
    pub fn i_j(chart: &Arc<ChartRing>, j: u32) -> Self {
        let mut gens = vec![ChartElem::u(chart), ChartElem::monomial(chart, 0, j as i32, 0, 1)];
        if let Ok(w) = ChartElem::w(chart) {
            gens.push(w);
        }
        IdealSpec { chart: chart.clone(), generators: gens }
    }

    pub fn maximal(chart: &Arc<ChartRing>) -> Self {
        Self::i_j(chart, 1)
    }

    pub fn generators(&self) -> &[ChartElem] {
        &self.generators
    }

    pub fn chart(&self) -> &Arc<ChartRing> {
        &self.chart
    }

    /// The ideal generated by `p`-th powers of the generators.
    pub fn frobenius_power(&self) -> Self {
        IdealSpec { chart: self.chart.clone(), generators: self.generators.iter().map(FpAlgebra::frobenius).collect() }
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Whether `(R^{n-1})^{-1}(I)` kills `e`: every `[g]` for `g` a generator of
/// `I` kills it, and `V(W_{n-1})` kills it, i.e. `F(R(e)) = 0`.
pub fn is_torsion(e: &CohClass, ideal: &IdealSpec) -> Result<bool, CohError> {
    e.check_chart(&ideal.chart)?;
    for g in &ideal.generators {
        if !scalar_mul_class(g, e)?.is_zero() {
            return Ok(false);
        }
    }
    if e.n() >= 2 && !frobenius_class(&r_class(e)?).is_zero() {
        return Ok(false);
    }
    Ok(true)
}

/// Whether `e` (length 1) generates the cyclic module of `(x, y^j, z)`-torsion:
/// it is torsion and `y^{j-1} e` is nonzero.
pub fn is_generator(e: &CohClass, j: u32) -> Result<bool, CohError> {
    if j == 0 || !is_torsion(e, &IdealSpec::i_j(&e.chart, j))? {
        return Ok(false);
    }
    let socle = scalar_mul_class(&ChartElem::monomial(&e.chart, 0, j as i32 - 1, 0, 1), e)?;
    Ok(!socle.is_zero())
}
