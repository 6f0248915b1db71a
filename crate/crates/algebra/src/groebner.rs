//! Buchberger's algorithm with the Gebauer-Moeller criteria and sugar pair
//! selection, plus the ideal operations built on it: normal forms,
//! elimination, kernels of ring maps, saturation and Krull dimension.

use std::cmp::Ordering;
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, Poly, PolyError, PolyRing, RingRef};

/// Default cap on elementary reduction steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("reduction budget of {0} steps exhausted")]
    Timeout(u64),
    #[error("the ideal is the whole ring")]
    UnitIdeal,
    #[error("generators are not homogeneous for the requested weights")]
    NotHomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Limit on the number of elementary reduction steps a computation may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(max_steps: u64) -> Self {
        Budget { max_steps }
    }

    pub fn unlimited() -> Self {
        Budget { max_steps: u64::MAX }
    }
}

/// Step counter shared by the reduction routines.
#[derive(Debug)]
pub struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    pub fn new(budget: Budget) -> Self {
        StepCounter { used: 0, limit: budget.max_steps }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GroebnerError::Timeout(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

type Terms<F> = Vec<(Monomial, F)>;

/// `p[from..] - coef * shift * g[1..]`, assuming the heads have cancelled.
fn sub_shifted<F: Field>(ring: &PolyRing, p: &[(Monomial, F)], g: &[(Monomial, F)], shift: &Monomial, coef: &F) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(shift));
    while i < p.len() {
        let Some(m) = gm.as_ref() else { break };
        match ring.cmp(&p[i].0, m) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((m.clone(), g[j].1.mul(coef).neg()));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(shift));
            }
            Ordering::Equal => {
                let mut c = p[i].1.clone();
                c.sub_mul_assign(&g[j].1, coef);
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(shift));
            }
        }
    }
    out.extend(p[i..].iter().cloned());
    while let Some(m) = gm {
        out.push((m, g[j].1.mul(coef).neg()));
        j += 1;
        gm = g.get(j).map(|t| t.0.mul(shift));
    }
    out
}

/// Reducer over a fixed list of polynomials with cached leading data.
struct Reducer<F: Field> {
    ring: RingRef,
    polys: Vec<Poly<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    inv_lcs: Vec<F>,
    active: Vec<bool>,
}

impl<F: Field> Reducer<F> {
    fn new(ring: &RingRef) -> Self {
        Reducer { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), masks: Vec::new(), inv_lcs: Vec::new(), active: Vec::new() }
    }

    fn push(&mut self, p: Poly<F>) -> usize {
        let lm = p.leading_monomial().expect("nonzero").clone();
        self.masks.push(lm.support_mask());
        self.inv_lcs.push(p.leading_coefficient().unwrap().inv().expect("nonzero"));
        self.lms.push(lm);
        self.polys.push(p);
        self.active.push(true);
        self.polys.len() - 1
    }

    fn find_divisor(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        (0..self.polys.len()).find(|&k| {
            self.active[k] && Some(k) != skip && self.masks[k] & !mask == 0 && self.lms[k].divides(m)
        })
    }

    /// Full reduction of `terms` by the active polynomials (except `skip`).
    fn reduce(&self, mut p: Terms<F>, skip: Option<usize>, steps: &mut StepCounter) -> Result<Terms<F>, GroebnerError> {
        let mut out: Terms<F> = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            match self.find_divisor(m, skip) {
                Some(k) => {
                    steps.tick()?;
                    let shift = m.div(&self.lms[k]).unwrap();
                    let coef = c.mul(&self.inv_lcs[k]);
                    p = sub_shifted(&self.ring, &p[start + 1..], &self.polys[k].terms()[1..], &shift, &coef);
                    start = 0;
                }
                None => {
                    out.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Reduced Groebner basis of the ideal generated by `gens`, with respect to
/// the order of their common ring. The result is sorted by leading monomial,
/// smallest first, and every element is monic.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>], budget: Budget) -> Result<Vec<Poly<F>>, GroebnerError> {
    let mut steps = StepCounter::new(budget);
    groebner_basis_counted(gens, &mut steps)
}

pub fn groebner_basis_counted<F: Field>(gens: &[Poly<F>], steps: &mut StepCounter) -> Result<Vec<Poly<F>>, GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(PolyError::ContextMismatch.into());
    }
    let order = ring.order().clone();
    let mut red = Reducer::new(&ring);
    let mut sugar: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inputs sorted so that small leading terms go first
    let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let insert = |h: Poly<F>, s: u64, red: &mut Reducer<F>, sugar: &mut Vec<u64>, pairs: &mut Vec<Pair>| {
        let h = h.monic();
        let lm_h = h.leading_monomial().unwrap().clone();
        let hi = red.push(h);
        sugar.push(s);
        // new candidate pairs
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for k in 0..hi {
            if red.active[k] {
                let l = red.lms[k].lcm(&lm_h);
                let coprime = red.lms[k].is_coprime(&lm_h);
                cands.push((k, l, coprime));
            }
        }
        // chain criterion inside the new pairs
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (k, ref l, coprime) = cands[idx];
            if coprime {
                kept.push((k, l.clone(), true));
                continue;
            }
            let dominated_by_rest = cands[idx + 1..].iter().any(|c| c.1.divides(l));
            let dominated_by_kept = kept.iter().any(|c| c.1.divides(l));
            if !dominated_by_rest && !dominated_by_kept {
                kept.push((k, l.clone(), false));
            }
        }
        // old pairs made redundant by h
        pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && red.lms[p.i].lcm(&lm_h) != p.lcm
                && red.lms[p.j].lcm(&lm_h) != p.lcm)
        });
        for (k, l, coprime) in kept {
            if coprime {
                continue;
            }
            let sk = sugar[k] + order.sugar_degree(&l.div(&red.lms[k]).unwrap());
            let sh = sugar[hi] + order.sugar_degree(&l.div(&lm_h).unwrap());
            pairs.push(Pair { i: k, j: hi, lcm: l, sugar: sk.max(sh) });
        }
        for k in 0..hi {
            if red.active[k] && lm_h.divides(&red.lms[k]) {
                red.active[k] = false;
            }
        }
    };

    for g in input {
        let s = g.terms().iter().map(|t| order.sugar_degree(&t.0)).max().unwrap_or(0);
        let r = red.reduce(g.into_terms(), None, steps)?;
        if r.is_empty() {
            continue;
        }
        let h = Poly::from_sorted(&ring, r);
        if h.is_constant() {
            return Ok(vec![Poly::one(&ring)]);
        }
        insert(h, s, &mut red, &mut sugar, &mut pairs);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord = a.sugar.cmp(&b.sugar).then_with(|| ring.cmp(&a.lcm, &b.lcm)).then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let (pi, pj) = (&red.polys[pair.i], &red.polys[pair.j]);
        let si = pair.lcm.div(&red.lms[pair.i]).unwrap();
        let sj = pair.lcm.div(&red.lms[pair.j]).unwrap();
        // both leading coefficients are one
        let a = pi.mul_term(&si, &F::one());
        let b = pj.mul_term(&sj, &F::one());
        let spoly = sub_shifted(&ring, &a.terms()[1..], &b.terms()[1..], &Monomial::one(ring.nvars()), &F::one());
        let r = red.reduce(spoly, None, steps)?;
        if r.is_empty() {
            continue;
        }
        let h = Poly::from_sorted(&ring, r);
        if h.is_constant() {
            return Ok(vec![Poly::one(&ring)]);
        }
        insert(h, pair.sugar, &mut red, &mut sugar, &mut pairs);
    }

    interreduce(red, steps)
}

fn interreduce<F: Field>(mut red: Reducer<F>, steps: &mut StepCounter) -> Result<Vec<Poly<F>>, GroebnerError> {
    let ring = red.ring.clone();
    let idx: Vec<usize> = (0..red.polys.len()).filter(|&k| red.active[k]).collect();
    let mut out = Vec::with_capacity(idx.len());
    for &k in &idx {
        let p = &red.polys[k];
        let head = p.terms()[0].clone();
        let tail = red.reduce(p.terms()[1..].to_vec(), Some(k), steps)?;
        let mut terms = vec![head];
        terms.extend(tail);
        let q = Poly::from_sorted(&ring, terms).monic();
        red.polys[k] = q.clone();
        out.push(q);
    }
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(out)
}

/// Normal form of `f` modulo `basis`. When `basis` is a Groebner basis the
/// result is the unique remainder.
pub fn normal_form<F: Field>(f: &Poly<F>, basis: &[Poly<F>], budget: Budget) -> Result<Poly<F>, GroebnerError> {
    let mut steps = StepCounter::new(budget);
    normal_form_counted(f, basis, &mut steps)
}

pub fn normal_form_counted<F: Field>(f: &Poly<F>, basis: &[Poly<F>], steps: &mut StepCounter) -> Result<Poly<F>, GroebnerError> {
    let ring = f.ring().clone();
    let mut red = Reducer::new(&ring);
    for g in basis {
        if !same_ring(g.ring(), &ring) {
            return Err(PolyError::ContextMismatch.into());
        }
        if !g.is_zero() {
            red.push(g.clone());
        }
    }
    let r = red.reduce(f.terms().to_vec(), None, steps)?;
    Ok(Poly::from_sorted(&ring, r))
}

/// Largest number of variables no leading monomial of `basis` is supported
/// on. For a Groebner basis of a proper ideal this is the Krull dimension of
/// the quotient ring.
pub fn dimension_from_leading_monomials<F: Field>(basis: &[Poly<F>], nvars: usize) -> usize {
    assert!(nvars <= 64, "dimension search supports at most 64 variables");
    let mut supports: Vec<u64> = basis.iter().filter_map(|g| g.leading_monomial()).map(|m| m.support_mask()).collect();
    supports.sort_unstable();
    supports.dedup();
    // drop supports containing another one
    let minimal: Vec<u64> = supports.iter().copied().filter(|&s| !supports.iter().any(|&t| t != s && t & !s == 0)).collect();

    fn dfs(i: usize, n: usize, cur: u64, size: usize, best: &mut usize, supp: &[u64]) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = cur | (1u64 << i);
        if supp.iter().all(|&s| s & !with != 0) {
            dfs(i + 1, n, with, size + 1, best, supp);
        }
        dfs(i + 1, n, cur, size, best, supp);
    }
    let mut best = 0;
    dfs(0, nvars, 0, 0, &mut best, &minimal);
    best
}

/// Ideal in a polynomial ring with a lazily computed reduced Groebner basis.
#[derive(Debug)]
pub struct Ideal<F: Field> {
    ring: RingRef,
    generators: Vec<Poly<F>>,
    basis: OnceLock<Vec<Poly<F>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), basis }
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &RingRef, generators: Vec<Poly<F>>) -> Result<Self, GroebnerError> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(PolyError::ContextMismatch.into());
        }
        Ok(Ideal { ring: ring.clone(), generators, basis: OnceLock::new() })
    }

    /// Ideal whose generators are already a reduced Groebner basis.
    pub fn from_basis(ring: &RingRef, basis: Vec<Poly<F>>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ring: ring.clone(), generators: basis, basis: cell }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    pub fn groebner_basis(&self, budget: Budget) -> Result<&[Poly<F>], GroebnerError> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis(&self.generators, budget)?;
        Ok(self.basis.get_or_init(|| b))
    }

    pub fn cached_basis(&self) -> Option<&[Poly<F>]> {
        self.basis.get().map(|b| b.as_slice())
    }

    pub fn normal_form(&self, f: &Poly<F>, budget: Budget) -> Result<Poly<F>, GroebnerError> {
        let b = self.groebner_basis(budget)?;
        normal_form(f, b, budget)
    }

    pub fn contains(&self, f: &Poly<F>, budget: Budget) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn is_unit(&self, budget: Budget) -> Result<bool, GroebnerError> {
        let b = self.groebner_basis(budget)?;
        Ok(b.iter().any(|g| g.is_constant() && !g.is_zero()))
    }

    pub fn krull_dimension(&self, budget: Budget) -> Result<usize, GroebnerError> {
        if self.is_unit(budget)? {
            return Err(GroebnerError::UnitIdeal);
        }
        let b = self.groebner_basis(budget)?;
        Ok(dimension_from_leading_monomials(b, self.ring.nvars()))
    }

    /// Equality of ideals via reduced Groebner bases in a common ring.
    pub fn equals(&self, other: &Ideal<F>, budget: Budget) -> Result<bool, GroebnerError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(PolyError::ContextMismatch.into());
        }
        Ok(self.groebner_basis(budget)? == other.groebner_basis(budget)?)
    }

    /// Each generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, budget: Budget) -> Result<bool, GroebnerError> {
        for g in other.generators() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Elements of the Groebner basis free of the first `k` variables. Needs
    /// an order eliminating those variables.
    pub fn eliminate_first(&self, k: usize, budget: Budget) -> Result<Vec<Poly<F>>, GroebnerError> {
        let b = self.groebner_basis(budget)?;
        Ok(b.iter().filter(|g| (0..k).all(|i| !g.involves(i))).cloned().collect())
    }

    pub fn saturate(&self, f: &Poly<F>, budget: Budget) -> Result<Ideal<F>, GroebnerError> {
        saturate(self, f, budget)
    }
}

fn fresh_name(names: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while names.contains(&name) {
        name.push('_');
    }
    name
}

/// `I : f^infinity` computed as the elimination of `w` from `I + (w f - 1)`.
pub fn saturate<F: Field>(ideal: &Ideal<F>, f: &Poly<F>, budget: Budget) -> Result<Ideal<F>, GroebnerError> {
    let ring = ideal.ring();
    if !same_ring(f.ring(), ring) {
        return Err(PolyError::ContextMismatch.into());
    }
    let mut names = vec![fresh_name(ring.names(), "w")];
    names.extend(ring.names().iter().cloned());
    let big = PolyRing::new(&names, MonomialOrder::Elimination { split: 1, weights: None });
    let n = ring.nvars();
    let shift: Vec<usize> = (1..=n).collect();
    let mut gens: Vec<Poly<F>> = ideal.generators().iter().map(|g| g.rename(&big, &shift)).collect();
    let w = Poly::var(&big, 0);
    gens.push(w.mul(&f.rename(&big, &shift)).sub(&Poly::one(&big)));
    let basis = groebner_basis(&gens, budget)?;
    let kept: Vec<Poly<F>> = basis
        .iter()
        .filter(|g| !g.involves(0))
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exps(&m.exps()[1..]), c.clone()))
                .collect();
            Poly::from_terms(ring, terms)
        })
        .collect();
    let reduced = groebner_basis(&kept, budget)?;
    Ok(Ideal::from_basis(ring, reduced))
}

/// Checks that every generator is homogeneous for the positive weights.
pub fn is_weighted_homogeneous<F: Field>(gens: &[Poly<F>], weights: &[u32]) -> bool {
    gens.iter().all(|g| {
        let mut it = g.terms().iter().map(|t| t.0.weighted_degree(weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    })
}

/// `I : x_v^infinity` for an ideal homogeneous with respect to positive
/// weights. Uses a weighted reverse lexicographic order with `x_v` last:
/// dividing each basis element by its largest power of `x_v` gives a basis of
/// the saturation. Returns generators in the original ring.
pub fn saturate_by_variable<F: Field>(gens: &[Poly<F>], var: usize, weights: &[u32], steps: &mut StepCounter) -> Result<Vec<Poly<F>>, GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let n = ring.nvars();
    if !is_weighted_homogeneous(gens, weights) {
        return Err(GroebnerError::NotHomogeneous);
    }
    // permutation placing var last
    let perm: Vec<usize> = (0..n).map(|i| if i < var { i } else if i == var { n - 1 } else { i - 1 }).collect();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let names: Vec<String> = inv.iter().map(|&i| ring.names()[i].clone()).collect();
    let w: Vec<u32> = inv.iter().map(|&i| weights[i]).collect();
    let work = PolyRing::new(&names, MonomialOrder::WeightedGrevLex(w));
    let moved: Vec<Poly<F>> = gens.iter().map(|g| g.rename(&work, &perm)).collect();
    let basis = groebner_basis_counted(&moved, steps)?;
    let mut out = Vec::with_capacity(basis.len());
    for g in basis {
        let e = g.var_content(n - 1);
        let g = if e > 0 { g.div_monomial(&Monomial::var(n, n - 1, e))? } else { g };
        out.push(g.rename(&ring, &inv));
    }
    Ok(out)
}

/// Iterated saturation by each listed variable.
pub fn saturate_by_variables<F: Field>(gens: &[Poly<F>], vars: &[usize], weights: &[u32], budget: Budget) -> Result<Vec<Poly<F>>, GroebnerError> {
    let mut steps = StepCounter::new(budget);
    let mut cur = gens.to_vec();
    for &v in vars {
        cur = saturate_by_variable(&cur, v, weights, &mut steps)?;
    }
    Ok(cur)
}

/// Kernel of the map `src -> target` sending variable `i` to `images[i]`.
/// Computed by eliminating the target variables from `(T_i - images[i])`.
/// When every image is homogeneous of positive degree, the elimination uses
/// the matching weights so the computation stays homogeneous. Returns a
/// reduced Groebner basis in `src`.
pub fn ring_map_kernel<F: Field>(src: &RingRef, images: &[Poly<F>], budget: Budget) -> Result<Vec<Poly<F>>, GroebnerError> {
    if images.len() != src.nvars() {
        return Err(PolyError::ContextMismatch.into());
    }
    let Some(first) = images.first() else {
        return Ok(Vec::new());
    };
    let target = first.ring().clone();
    if images.iter().any(|p| !same_ring(p.ring(), &target)) {
        return Err(PolyError::ContextMismatch.into());
    }
    let nx = target.nvars();
    let m = src.nvars();
    let std_grading: Vec<Vec<i64>> = vec![vec![1]; nx];
    let mut degs = Vec::with_capacity(m);
    for p in images {
        match p.homogeneous_degree(&std_grading) {
            Ok(Some(d)) if d[0] > 0 => degs.push(d[0] as u32),
            _ => break,
        }
    }
    let weights = if degs.len() == m {
        let mut w = vec![1u32; nx];
        w.extend(degs);
        Some(w)
    } else {
        None
    };
    let mut names: Vec<String> = target.names().to_vec();
    for name in src.names() {
        names.push(fresh_name(&names, name));
    }
    let big = PolyRing::new(&names, MonomialOrder::Elimination { split: nx, weights });
    let xmap: Vec<usize> = (0..nx).collect();
    let gens: Vec<Poly<F>> = images
        .iter()
        .enumerate()
        .map(|(i, s)| Poly::var(&big, nx + i).sub(&s.rename(&big, &xmap)))
        .collect();
    let basis = groebner_basis(&gens, budget)?;
    let kept: Vec<Poly<F>> = basis
        .iter()
        .filter(|g| (0..nx).all(|i| !g.involves(i)))
        .map(|g| {
            let terms = g.terms().iter().map(|(mm, c)| (Monomial::from_exps(&mm.exps()[nx..]), c.clone())).collect();
            Poly::from_terms(src, terms)
        })
        .collect();
    // re-reduce in the order of src
    groebner_basis(&kept, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn ring(names: &[&str], order: MonomialOrder) -> RingRef {
        PolyRing::new(names, order)
    }

    fn ps(r: &RingRef, v: &[&str]) -> Vec<Poly<Rational>> {
        v.iter().map(|s| Poly::parse(r, s).unwrap()).collect()
    }

    #[test]
    fn textbook_basis() {
        // Cox-Little-O'Shea example: (x^3 - 2xy, x^2y - 2y^2 + x) in grlex
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let g = groebner_basis(&ps(&r, &["x^3 - 2x*y", "x^2*y - 2y^2 + x"]), Budget::default()).unwrap();
        assert_eq!(g, ps(&r, &["y^2 - 1/2*x", "x*y", "x^2"]));
    }

    #[test]
    fn lex_basis_triangular() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let g = groebner_basis(&ps(&r, &["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"]), Budget::default()).unwrap();
        // last element is univariate in z
        let last = &g[0];
        assert!(!last.involves(0) && !last.involves(1));
        assert_eq!(last, &Poly::parse(&r, "z^6 - 4z^4 + 4z^3 - z^2").unwrap());
    }

    #[test]
    fn unit_ideal_and_dimension() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let i = Ideal::new(&r, ps(&r, &["x*y - 1", "x"])).unwrap();
        assert!(i.is_unit(Budget::default()).unwrap());
        assert_eq!(i.krull_dimension(Budget::default()), Err(GroebnerError::UnitIdeal));
        let j = Ideal::new(&r, ps(&r, &["x*y"])).unwrap();
        assert_eq!(j.krull_dimension(Budget::default()).unwrap(), 1);
        let r3 = ring(&["x", "y", "z", "w"], MonomialOrder::GrevLex);
        let k = Ideal::new(&r3, ps(&r3, &["x*w - y*z", "y^2 - x*z", "z^2 - y*w"])).unwrap();
        assert_eq!(k.krull_dimension(Budget::default()).unwrap(), 2);
    }

    #[test]
    fn budget_exhaustion() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gens = ps(&r, &["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"]);
        assert_eq!(groebner_basis(&gens, Budget::new(3)), Err(GroebnerError::Timeout(3)));
    }

    #[test]
    fn twisted_cubic_kernel() {
        let src = ring(&["a", "b", "c", "d"], MonomialOrder::GrevLex);
        let tgt = ring(&["s", "t"], MonomialOrder::GrevLex);
        let images = ps(&tgt, &["s^3", "s^2*t", "s*t^2", "t^3"]);
        let k = ring_map_kernel(&src, &images, Budget::default()).unwrap();
        let expected = Ideal::new(&src, ps(&src, &["a*c - b^2", "b*d - c^2", "a*d - b*c"])).unwrap();
        let got = Ideal::new(&src, k).unwrap();
        assert!(got.equals(&expected, Budget::default()).unwrap());
    }

    #[test]
    fn saturation_methods_agree() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        // (x*z, y*z) : z^inf = (x, y)
        let i = Ideal::new(&r, ps(&r, &["x*z", "y*z", "x^2*y"])).unwrap();
        let z = Poly::var(&r, 2);
        let s = saturate(&i, &z, Budget::default()).unwrap();
        let expected = Ideal::new(&r, ps(&r, &["x", "y"])).unwrap();
        assert!(s.equals(&expected, Budget::default()).unwrap());
        let fast = saturate_by_variables(i.generators(), &[2], &[1, 1, 1], Budget::default()).unwrap();
        assert!(Ideal::new(&r, fast).unwrap().equals(&expected, Budget::default()).unwrap());
    }

    #[test]
    fn membership_by_normal_form() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let i = Ideal::new(&r, ps(&r, &["x^2 - y", "x*y - 1"])).unwrap();
        let f = Poly::parse(&r, "(x^2 - y)*(x + 3) + (x*y - 1)*y^2").unwrap();
        assert!(i.contains(&f, Budget::default()).unwrap());
        assert!(!i.contains(&Poly::parse(&r, "x").unwrap(), Budget::default()).unwrap());
    }
}
