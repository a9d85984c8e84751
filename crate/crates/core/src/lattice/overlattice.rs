use std::collections::HashSet;

use num_integer::Roots;
use serde::Serialize;

use super::{extend_lattice, show_rational, DiscForm, GramLattice, LatticeError};

/// Largest discriminant group searched.
pub const GUARD: u64 = 100_000;

/// Result of the overlattice search.
#[derive(Clone, Debug, Serialize)]
pub struct Overlattice {
    pub exists: bool,
    pub disc_order: u64,
    /// Gram matrix of a unimodular overlattice, when one exists.
    pub witness: Option<GramLattice>,
    /// Generators of the isotropic subgroup, as vectors of `L (x) Q`.
    pub glue_vectors: Vec<Vec<String>>,
    /// Isotropic subgroups visited, summed over primes.
    pub visited: usize,
}

/// One `l`-primary part `(+) Z/l^{a_i}`, embedded in the full group.
struct Primary<'a> {
    d: &'a DiscForm,
    orders: Vec<u64>,
    // embedding of the i-th primary generator in full coordinates
    embed: Vec<Vec<u64>>,
    size: u64,
}

impl Primary<'_> {
    fn new(d: &DiscForm, l: u64) -> Primary<'_> {
        let mut orders = Vec::new();
        let mut embed = Vec::new();
        for (i, &di) in d.orders().iter().enumerate() {
            let mut pa = 1;
            while di % (pa * l) == 0 {
                pa *= l;
            }
            if pa == 1 {
                continue;
            }
            let mut c = vec![0; d.orders().len()];
            c[i] = di / pa;
            orders.push(pa);
            embed.push(c);
        }
        let size = orders.iter().product();
        Primary { d, orders, embed, size }
    }

    fn digits(&self, mut idx: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let x = idx % n;
                idx /= n;
                x
            })
            .collect()
    }

    fn index(&self, k: &[u64]) -> u64 {
        self.orders.iter().zip(k).rev().fold(0, |acc, (&n, &x)| acc * n + x % n)
    }

    fn full(&self, k: &[u64]) -> Vec<u64> {
        let mut c = vec![0; self.d.orders().len()];
        for (ki, e) in k.iter().zip(&self.embed) {
            c = self.d.add(&c, &self.d.scale(*ki, e));
        }
        c
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((p, q), n)| (p + q) % n).collect();
        self.index(&s)
    }

    /// Exhaustive search for an isotropic subgroup of order `sqrt(size)`;
    /// returns its generators in full coordinates.
    fn search(&self, l: u64, visited: &mut usize) -> Option<Vec<Vec<u64>>> {
        let target = self.size.sqrt();
        if target * target != self.size {
            return None;
        }
        let full: Vec<Vec<u64>> = (0..self.size).map(|i| self.full(&self.digits(i))).collect();
        let iso: Vec<u64> = (1..self.size).filter(|&i| self.d.q_num(&full[i as usize]) == 0).collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut stack: Vec<(Vec<u64>, Vec<u64>)> = vec![(vec![0], vec![])];
        while let Some((h, gens)) = stack.pop() {
            *visited += 1;
            if h.len() as u64 == target {
                return Some(gens.iter().map(|&g| full[g as usize].clone()).collect());
            }
            let members: HashSet<u64> = h.iter().copied().collect();
            for &x in &iso {
                if members.contains(&x) {
                    continue;
                }
                // l x must already lie in H: extensions of index l
                let mut lx = 0;
                for _ in 0..l {
                    lx = self.add(lx, x);
                }
                if !members.contains(&lx) {
                    continue;
                }
                if gens.iter().any(|&g| self.d.b_num(&full[x as usize], &full[g as usize]) != 0) {
                    continue;
                }
                let mut next = Vec::with_capacity(h.len() * l as usize);
                let mut kx = 0;
                for _ in 0..l {
                    next.extend(h.iter().map(|&y| self.add(y, kx)));
                    kx = self.add(kx, x);
                }
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    let mut g = gens.clone();
                    g.push(x);
                    stack.push((next, g));
                }
            }
        }
        None
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Search for a unimodular overlattice of finite index: an isotropic
/// subgroup `H` of `L^*/L` with `|H|^2 = |L^*/L|`. For even `L` isotropy
/// means `q = 0` in `Q/2Z` (the overlattice is even); for odd `L` it means
/// `v^2` integral, and the overlattice is integral.
///
/// `b` and `q` are orthogonal across primes, so each primary part is
/// searched on its own.
pub fn unimodular_overlattice_exists(l: &GramLattice) -> Result<Overlattice, LatticeError> {
    let d = DiscForm::new(l)?;
    let order = d.order();
    if order > GUARD {
        return Err(LatticeError::Guard(order));
    }
    let mut out = Overlattice { exists: false, disc_order: order, witness: None, glue_vectors: vec![], visited: 0 };
    let root = order.sqrt();
    if root * root != order {
        return Ok(out);
    }
    let mut gens = Vec::new();
    for p in prime_factors(order) {
        match Primary::new(&d, p).search(p, &mut out.visited) {
            Some(g) => gens.extend(g),
            None => return Ok(out),
        }
    }
    let lifts: Vec<_> = gens.iter().map(|c| d.lift(c)).collect::<Result<_, _>>()?;
    let (witness, _) = extend_lattice(l, &lifts)?;
    if !witness.is_unimodular() {
        return Err(LatticeError::Check(format!("witness has determinant {}", witness.det())));
    }
    out.exists = true;
    out.witness = Some(witness);
    out.glue_vectors = lifts.iter().map(|v| v.iter().map(show_rational).collect()).collect();
    Ok(out)
}
