use std::sync::Arc;

use super::ring::{ChartElem, ChartRing};
use super::ChartError;
use crate::witt::FpAlgebra;

/// A ring map between charts: `u -> U^a V^b`, `v -> U^c V^d` (unit monomials
/// of the target) and, for sources of rank > 1, `w -> image_w`.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<ChartRing>,
    target: Arc<ChartRing>,
    image_u: (i32, i32),
    image_v: (i32, i32),
    /// Powers `image_w^c` for `c < source.rank()`.
    w_powers: Vec<ChartElem>,
    name: String,
}

impl RingMap {
    /// Builds the map and checks that the source relation is sent to zero.
    pub fn new(
        name: &str,
        source: &Arc<ChartRing>,
        target: &Arc<ChartRing>,
        image_u: (i32, i32),
        image_v: (i32, i32),
        image_w: Option<ChartElem>,
    ) -> Result<Self, ChartError> {
        for (lab, (a, b)) in [("u", image_u), ("v", image_v)] {
            if a < 0 || b < 0 || (a == 0 && b == 0) {
                return Err(ChartError::BadImage(format!(
                    "image of {lab} must be a nonconstant monomial, got ({a}, {b})"
                )));
            }
        }
        if source.p() != target.p() {
            return Err(ChartError::RingMismatch { left: source.name().into(), right: target.name().into() });
        }
        let d = source.rank() as usize;
        let w_powers = if d == 1 {
            if image_w.is_some() {
                return Err(ChartError::BadImage("rank-1 source has no w".into()));
            }
            vec![ChartElem::one(target)]
        } else {
            let w = image_w.ok_or_else(|| ChartError::BadImage("missing image of w".into()))?;
            let w = w.rehome(target)?;
            let mut pw = vec![ChartElem::one(target)];
            for c in 1..d {
                pw.push(FpAlgebra::mul(&pw[c - 1], &w));
            }
            pw
        };
        let map = RingMap {
            source: source.clone(),
            target: target.clone(),
            image_u,
            image_v,
            w_powers,
            name: name.to_string(),
        };
        if d > 1 {
            // image_w^d - sum R_k(image_u, image_v) image_w^k must vanish
            let top = FpAlgebra::mul(&map.w_powers[d - 1], &map.w_powers[1]);
            let mut rhs = ChartElem::zero(target);
            for k in 0..d {
                let coeff = source.relation_coeff(k);
                for (m, &c) in coeff.terms() {
                    let (i, j) = (m.exps()[0] as i32, m.exps()[1] as i32);
                    let mono = map.monomial_image(i, j);
                    let t = FpAlgebra::mul(&map.w_powers[k], &mono).scale(c);
                    rhs = FpAlgebra::add(&rhs, &t);
                }
            }
            let defect = FpAlgebra::sub(&top, &rhs);
            if !FpAlgebra::is_zero(&defect) {
                return Err(ChartError::RelationNotRespected { map: name.to_string(), defect: defect.to_string() });
            }
        }
        Ok(map)
    }

    /// The absolute Frobenius of a chart, `u -> u^p`, `v -> v^p`, `w -> w^p`.
    pub fn frobenius(ring: &Arc<ChartRing>) -> Self {
        let p = ring.p() as i32;
        let image_w = (ring.rank() > 1).then(|| FpAlgebra::frobenius(&ChartElem::w(ring).expect("rank > 1")));
        Self::new("frobenius", ring, ring, (p, 0), (0, p), image_w).expect("Frobenius respects every relation")
    }

    pub fn identity(ring: &Arc<ChartRing>) -> Self {
        let image_w = (ring.rank() > 1).then(|| ChartElem::w(ring).expect("rank > 1"));
        Self::new("identity", ring, ring, (1, 0), (0, 1), image_w).expect("identity respects every relation")
    }

    pub fn source(&self) -> &Arc<ChartRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChartRing> {
        &self.target
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn image_u(&self) -> ChartElem {
        self.monomial_image(1, 0)
    }

    pub fn image_v(&self) -> ChartElem {
        self.monomial_image(0, 1)
    }

    pub fn image_w(&self) -> Option<&ChartElem> {
        self.w_powers.get(1)
    }

    fn monomial_image(&self, i: i32, j: i32) -> ChartElem {
        let (a, b) = self.image_u;
        let (c, d) = self.image_v;
        ChartElem::monomial(&self.target, i * a + j * c, i * b + j * d, 0, 1)
    }

    /// Substitute the images into `a`.
    pub fn apply(&self, a: &ChartElem) -> Result<ChartElem, ChartError> {
        if !(Arc::ptr_eq(a.ring(), &self.source) || **a.ring() == *self.source) {
            return Err(ChartError::RingMismatch { left: a.ring().name().into(), right: self.source.name().into() });
        }
        let d = self.source.rank() as usize;
        // group by w-degree so each image_w power is multiplied once
        let mut by_c: Vec<Vec<((i32, i32, u8), u32)>> = vec![Vec::new(); d];
        let (ua, ub) = self.image_u;
        let (va, vb) = self.image_v;
        for (&(i, j, c), &v) in a.terms() {
            by_c[c as usize].push(((i * ua + j * va, i * ub + j * vb, 0), v));
        }
        let mut out = ChartElem::zero(&self.target);
        for (c, terms) in by_c.into_iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let base = ChartElem::from_terms(&self.target, terms);
            out = FpAlgebra::add(&out, &FpAlgebra::mul(&base, &self.w_powers[c]));
        }
        Ok(out)
    }
}
