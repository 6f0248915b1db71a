//! Sparse multivariate polynomials over an exact field.
//!
//! A polynomial lives in a [`PolyRing`], an ordered list of variable names
//! together with a monomial order. Terms are kept sorted, largest first,
//! with nonzero coefficients and no repeated monomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::field::{ArithmeticError, Field};

pub type Exp = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("exact division failed")]
    NotDivisible,
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Dense exponent vector. Unused variables hold exponent zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[Exp; 32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exps(exps: &[Exp]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, i: usize, e: Exp) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> Exp {
        self.exps[i]
    }

    pub fn set_exp(&mut self, i: usize, e: Exp) {
        self.exps[i] = e;
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.exps.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bit set of variables with positive exponent (variables past 63 share
    /// the last bit).
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << i.min(63);
            }
        }
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Graded by the given positive weights, ties broken reverse
    /// lexicographically.
    WeightedGrevLex(Vec<u32>),
    /// Product order: the first `split` variables are compared first, each
    /// block by (weighted) graded reverse lexicographic order. Eliminates the
    /// first block.
    Elimination { split: usize, weights: Option<Vec<u32>> },
}

fn revlex_tail(a: &[Exp], b: &[Exp]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn wdeg(a: &[Exp], w: Option<&[u32]>) -> u64 {
    match w {
        Some(w) => a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum(),
        None => a.iter().map(|&e| e as u64).sum(),
    }
}

fn graded_revlex(a: &[Exp], b: &[Exp], w: Option<&[u32]>) -> Ordering {
    wdeg(a, w).cmp(&wdeg(b, w)).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exps(), b.exps());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => graded_revlex(a, b, None),
            MonomialOrder::WeightedGrevLex(w) => graded_revlex(a, b, Some(w)),
            MonomialOrder::Elimination { split, weights } => {
                let k = *split;
                let (w1, w2) = match weights {
                    Some(w) => (Some(&w[..k]), Some(&w[k..])),
                    None => (None, None),
                };
                graded_revlex(&a[..k], &b[..k], w1).then_with(|| graded_revlex(&a[k..], &b[k..], w2))
            }
        }
    }

    /// Degree used for the sugar of a monomial.
    pub fn sugar_degree(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::WeightedGrevLex(w) => m.weighted_degree(w),
            MonomialOrder::Elimination { weights: Some(w), .. } => m.weighted_degree(w),
            _ => m.degree() as u64,
        }
    }

    fn validate(&self, nvars: usize) {
        match self {
            MonomialOrder::WeightedGrevLex(w) => {
                assert_eq!(w.len(), nvars, "weight vector length");
                assert!(w.iter().all(|&x| x > 0), "weights must be positive");
            }
            MonomialOrder::Elimination { split, weights } => {
                assert!(*split <= nvars, "split index out of range");
                if let Some(w) = weights {
                    assert_eq!(w.len(), nvars, "weight vector length");
                    assert!(w.iter().all(|&x| x > 0), "weights must be positive");
                }
            }
            _ => {}
        }
    }
}

/// Ring context: ordered variable names and a monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> RingRef {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        order.validate(names.len());
        Arc::new(PolyRing { names, order })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        PolyRing::new(&self.names, order)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A polynomial: terms in strictly decreasing monomial order.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: RingRef,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &RingRef) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: F) -> Self {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Poly::constant(ring, F::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Poly::term(ring, Monomial::var(ring.nvars(), i, 1), F::one())
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self, PolyError> {
        let i = ring.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(ring, i))
    }

    pub fn term(ring: &RingRef, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, F)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` is already sorted and reduced.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.iter().find(|t| t.0 == *m).map(|t| t.1.clone()).unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panicking versions for use when both operands are known to share a
    /// ring.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("ring mismatch")
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&large.mul_term(m, c), false);
        }
        acc
    }

    pub fn neg(&self) -> Self {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect() }
    }

    /// Multiplication by `c * m`. Monomial orders are multiplicative, so the
    /// term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((m, _)) => it.fold(m.clone(), |g, (n, _)| g.gcd(n)),
        }
    }

    /// Exact division by a monomial.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, c) in &self.terms {
            terms.push((n.div(m).ok_or(PolyError::NotDivisible)?, c.clone()));
        }
        // division by a monomial can change relative order only for
        // non-multiplicative orders, which we do not have
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Largest power of variable `i` dividing the polynomial.
    pub fn var_content(&self, i: usize) -> Exp {
        self.terms.iter().map(|t| t.0.exp(i)).min().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.iter().any(|t| t.0.exp(i) > 0)).collect()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(i) > 0)
    }

    /// Re-sorts into a ring with the same variables and another order.
    pub fn to_ring(&self, ring: &RingRef) -> Self {
        assert_eq!(ring.names(), self.ring.names(), "to_ring needs identical variables");
        Poly::from_terms(ring, self.terms.clone())
    }

    /// Moves into `ring`, sending variable `i` to variable `map[i]`.
    pub fn rename(&self, ring: &RingRef, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &x) in m.exps().iter().enumerate() {
                    if x > 0 {
                        e.set_exp(map[i], e.exp(map[i]) + x);
                    }
                }
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Moves into `ring` by matching variable names.
    pub fn rename_by_name(&self, ring: &RingRef) -> Result<Self, PolyError> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.names().iter().enumerate() {
            match ring.index_of(name) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => return Err(PolyError::UnknownVariable(name.clone())),
            }
        }
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(n);
                for (i, &x) in m.exps().iter().enumerate() {
                    if x > 0 {
                        e.set_exp(map[i], x);
                    }
                }
                (e, c.clone())
            })
            .collect();
        Ok(Poly::from_terms(ring, terms))
    }

    /// Ring homomorphism: variable `i` goes to `images[i]`, all images in a
    /// common target ring.
    pub fn substitute(&self, target: &RingRef, images: &[Poly<F>]) -> Result<Self, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::ContextMismatch);
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(PolyError::ContextMismatch);
        }
        let mut cache: HashMap<(usize, Exp), Poly<F>> = HashMap::new();
        let mut acc: Vec<(Monomial, F)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32)).clone();
                t = t.mul_unchecked(&p);
                if t.is_zero() {
                    break;
                }
            }
            acc.extend(t.terms);
        }
        Ok(Poly::from_terms(target, acc))
    }

    /// Replaces the listed variables by constants, staying in the same ring.
    pub fn specialize(&self, values: &[(usize, F)]) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let mut c = c.clone();
            for (i, v) in values {
                let e = m.exp(*i);
                if e > 0 {
                    for _ in 0..e {
                        c = c.mul(v);
                    }
                    m.set_exp(*i, 0);
                }
            }
            if !c.is_zero() {
                terms.push((m, c));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }

    /// Degree of the polynomial under an integer grading of the variables,
    /// if every term has the same degree.
    pub fn homogeneous_degree(&self, grading: &[Vec<i64>]) -> Result<Option<Vec<i64>>, PolyError> {
        assert_eq!(grading.len(), self.ring.nvars());
        let dim = grading.first().map_or(0, |g| g.len());
        let mut first: Option<Vec<i64>> = None;
        for (m, _) in &self.terms {
            let mut d = vec![0i64; dim];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    for (k, g) in grading[i].iter().enumerate() {
                        d[k] += g * e as i64;
                    }
                }
            }
            match &first {
                None => first = Some(d),
                Some(f) if *f != d => return Err(PolyError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(first)
    }

    pub fn is_homogeneous(&self, grading: &[Vec<i64>]) -> bool {
        self.homogeneous_degree(grading).is_ok()
    }

    /// Parses `s` in the given ring.
    pub fn parse(ring: &RingRef, s: &str) -> Result<Self, PolyError> {
        Parser::new(ring, s).parse_all()
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let c_abs = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coef = if c_abs.is_compound() { format!("({})", c_abs) } else { c_abs.to_string() };
            if m.is_one() {
                write!(f, "{}", coef)?;
            } else if c_abs.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", coef, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

struct Parser<'a, F: Field> {
    ring: &'a RingRef,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src_len: usize,
    _f: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(ring: &'a RingRef, s: &str) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (off, ch) = chars[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                let mut t = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    t.push(chars[i].1);
                    i += 1;
                }
                toks.push((off, Tok::Int(t)));
            } else if ch.is_alphabetic() || ch == '_' {
                let mut t = String::new();
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    t.push(chars[i].1);
                    i += 1;
                }
                toks.push((off, Tok::Ident(t)));
            } else {
                toks.push((off, Tok::Sym(ch)));
                i += 1;
            }
        }
        Parser { ring, toks, pos: 0, src_len: s.len(), _f: std::marker::PhantomData }
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        let pos = self.toks.get(self.pos).map_or(self.src_len, |t| t.0);
        Err(PolyError::Parse { pos, msg: msg.to_string() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn parse_all(mut self) -> Result<Poly<F>, PolyError> {
        if self.toks.is_empty() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if self.pos != self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly<F>, PolyError> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Sym('-')) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Sym('+')) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.merge(&t, false);
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.merge(&t, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<Poly<F>, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if let Some(Tok::Sym('*')) = self.peek() {
                self.pos += 1;
                let f = self.factor()?;
                acc = acc.mul_unchecked(&f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = acc.mul_unchecked(&f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = match n.parse() {
                        Ok(e) if e <= Exp::MAX as u32 => e,
                        _ => return self.err("exponent too large"),
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut text = n;
                if let Some(Tok::Sym('/')) = self.peek() {
                    if let Some((_, Tok::Int(d))) = self.toks.get(self.pos + 1).cloned() {
                        self.pos += 2;
                        text = format!("{}/{}", text, d);
                    } else {
                        return self.err("expected denominator");
                    }
                }
                let q: crate::field::Rational = text.parse()?;
                Ok(Poly::constant(self.ring, F::from_rational(&q)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ring.index_of(&name) {
                    return Ok(Poly::var(self.ring, i));
                }
                if name == "e" {
                    if let Some(e) = F::epsilon() {
                        return Ok(Poly::constant(self.ring, e));
                    }
                }
                Err(PolyError::UnknownVariable(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(p)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Cyclotomic3, Rational};

    fn ring(names: &[&str]) -> RingRef {
        PolyRing::new(names, MonomialOrder::GrevLex)
    }

    fn p(r: &RingRef, s: &str) -> Poly<Rational> {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn grevlex_and_lex_orders() {
        let m = |e: &[Exp]| Monomial::from_exps(e);
        let g = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex (3 vars x>y>z)
        assert_eq!(g.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        let w = MonomialOrder::WeightedGrevLex(vec![1, 3, 1]);
        assert_eq!(w.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
        let el = MonomialOrder::Elimination { split: 1, weights: None };
        assert_eq!(el.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn parse_print_roundtrip() {
        let r = ring(&["x", "y", "z"]);
        let f = p(&r, "x^2*y - 3/2*z + 2(x + y)^2 - 4x*y");
        assert_eq!(f.to_string(), "x^2*y + 2*x^2 + 2*y^2 - 3/2*z");
        assert_eq!(p(&r, &f.to_string()), f);
        assert_eq!(p(&r, "-(x - y)"), p(&r, "y - x"));
        assert_eq!(p(&r, "0").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        let r = ring(&["x", "y"]);
        assert_eq!(Poly::<Rational>::parse(&r, "x + w"), Err(PolyError::UnknownVariable("w".into())));
        assert!(matches!(Poly::<Rational>::parse(&r, "x +"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::<Rational>::parse(&r, "(x"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::<Rational>::parse(&r, "e*x"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn parse_cyclotomic() {
        let r = ring(&["x", "y"]);
        let f: Poly<Cyclotomic3> = Poly::parse(&r, "x + e^2*y").unwrap();
        let g: Poly<Cyclotomic3> = Poly::parse(&r, "x + (-1 - e)*y").unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_string(), "x + (-1 - e)*y");
        let h: Poly<Cyclotomic3> = Poly::parse(&r, "(-2e - 1)x").unwrap();
        assert_eq!(h.to_string(), "(-1 - 2*e)*x");
        assert_eq!(Poly::parse(&r, &h.to_string()).unwrap(), h);
    }

    #[test]
    fn arithmetic_identities() {
        let r = ring(&["x", "y"]);
        let a = p(&r, "x + y");
        let b = p(&r, "x - y");
        assert_eq!(a.mul(&b), p(&r, "x^2 - y^2"));
        assert_eq!(a.pow(3), p(&r, "x^3 + 3x^2*y + 3x*y^2 + y^3"));
        assert!(a.sub(&a).is_zero());
        let other = ring(&["x", "z"]);
        assert_eq!(a.try_add(&p(&other, "x")), Err(PolyError::ContextMismatch));
    }

    #[test]
    fn substitution_and_grading() {
        let src = ring(&["T1", "T2"]);
        let dst = ring(&["x", "y"]);
        let f = p(&src, "T1^2 - T2");
        let g = f.substitute(&dst, &[p(&dst, "x + y"), p(&dst, "x^2 + 2x*y")]).unwrap();
        assert_eq!(g, p(&dst, "y^2"));
        let grading = vec![vec![1], vec![2]];
        assert_eq!(f.homogeneous_degree(&grading), Ok(Some(vec![2])));
        assert!(!p(&src, "T1 + T2").is_homogeneous(&grading));
    }

    #[test]
    fn rename_and_specialize() {
        let r = ring(&["x", "y", "z"]);
        let f = p(&r, "x*y + z^2");
        let s = f.specialize(&[(2, Rational::integer(2))]);
        assert_eq!(s, p(&r, "x*y + 4"));
        let r2 = ring(&["z", "y", "x"]);
        assert_eq!(f.rename_by_name(&r2).unwrap(), p(&r2, "x*y + z^2"));
        assert_eq!(f.monomial_content(), Monomial::one(3));
        assert_eq!(p(&r, "x^2*y + x^3").var_content(0), 2);
    }
}
