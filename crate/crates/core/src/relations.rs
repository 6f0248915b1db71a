//! Relations of the Cox ring from plane models of the generators.
//!
//! The non-exceptional generators `T_i` map to plane polynomials `s_i`. The
//! kernel `J` of `T_i -> s_i` is rehomogenized by attaching to each `T_i` the
//! monomial in the exceptional variables `S_j` that cancels its exceptional
//! degree, and saturating by every `S_j` gives `J'` inside the Cox ideal.
//! Equality holds when `dim J' = 12`.

use crate::catalog::{CatalogError, SectionSpec, SurfaceDescriptor};
use crate::linalg::{solve_unimodular, IntMatrix};
use crate::picard::{DivisorClass, RANK};
use coxsurf_algebra::groebner::{dimension_from_leading_monomials, normal_form, saturate_by_variables};
use coxsurf_algebra::{groebner_basis, ring_map_kernel, Budget, Field, GroebnerError, Monomial, MonomialOrder, Poly, PolyRing, RingRef};
use serde::Serialize;
use std::time::{Duration, Instant};

/// Krull dimension of the Cox ideal: rank of the class group plus two.
pub const COX_DIMENSION: usize = RANK + 2;

#[derive(Debug, thiserror::Error)]
pub enum RelationsError {
    #[error("{0}: no section map for generator {1}")]
    NoSectionMap(String, String),
    #[error("{0}: exceptional degrees are not a basis")]
    NotABasis(String),
    #[error("{0}: section of {1} has degree {2}, expected {3}")]
    SectionDegree(String, String, i64, i64),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("{stage}: {source}")]
    Groebner { stage: &'static str, source: GroebnerError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

fn stage(stage: &'static str) -> impl Fn(GroebnerError) -> RelationsError {
    move |source| RelationsError::Groebner { stage, source }
}

/// Plane polynomials of the non-exceptional generators.
#[derive(Debug, Clone)]
pub struct SectionMap<F: Field> {
    /// Indices (in reference order) of the generators with plane images.
    pub vars: Vec<usize>,
    pub images: Vec<Poly<F>>,
    /// Indices of the exceptional generators.
    pub exceptional: Vec<usize>,
}

impl<F: Field> SectionMap<F> {
    pub fn from_surface(s: &SurfaceDescriptor) -> Result<Self, RelationsError> {
        let plane = SurfaceDescriptor::plane_ring();
        let mut vars = Vec::new();
        let mut images = Vec::new();
        let mut exceptional = Vec::new();
        for (i, g) in s.reference.iter().enumerate() {
            match &g.section {
                SectionSpec::Exceptional => exceptional.push(i),
                SectionSpec::Plane(p) => {
                    let poly = Poly::parse(&plane, &s.bind(p)).map_err(CatalogError::from)?;
                    let deg = poly.total_degree().unwrap_or(0) as i64;
                    if !poly.is_homogeneous(&[vec![1], vec![1], vec![1]]) || deg != g.degree.0[0] {
                        return Err(RelationsError::SectionDegree(s.name.clone(), g.var.clone(), deg, g.degree.0[0]));
                    }
                    vars.push(i);
                    images.push(poly);
                }
                SectionSpec::Unknown => return Err(RelationsError::NoSectionMap(s.name.clone(), g.var.clone())),
            }
        }
        Ok(SectionMap { vars, images, exceptional })
    }
}

/// For each non-exceptional generator, the exponents of the exceptional
/// variables in `m_i(S)`, possibly negative.
#[derive(Debug, Clone, Serialize)]
pub struct Rehomogenizer {
    pub vars: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub exponents: Vec<Vec<i64>>,
}

impl Rehomogenizer {
    pub fn new(degrees: &[DivisorClass], vars: &[usize], exceptional: &[usize]) -> Option<Self> {
        let mut cols = vec![DivisorClass::basis(0)];
        cols.extend(exceptional.iter().map(|&j| degrees[j]));
        let b: IntMatrix = (0..RANK).map(|r| cols.iter().map(|c| c.0[r]).collect()).collect();
        let exponents = vars
            .iter()
            .map(|&i| {
                let c = solve_unimodular(&b, &degrees[i].0)?;
                Some(c[1..].iter().map(|x| -x).collect())
            })
            .collect::<Option<Vec<Vec<i64>>>>()?;
        Some(Rehomogenizer { vars: vars.to_vec(), exceptional: exceptional.to_vec(), exponents })
    }

    /// `g(T_i m_i(S))` in `full`, times the smallest monomial in `S` making
    /// it a polynomial. `g` lives in the ring of the non-exceptional
    /// variables, listed as in `self.vars`.
    pub fn apply<F: Field>(&self, g: &Poly<F>, full: &RingRef) -> Poly<F> {
        let n = full.nvars();
        let ns = self.exceptional.len();
        let raw: Vec<(Vec<i64>, &Monomial, &F)> = g
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut s = vec![0i64; ns];
                for (k, &e) in m.exps().iter().enumerate() {
                    for (j, x) in s.iter_mut().enumerate() {
                        *x += e as i64 * self.exponents[k][j];
                    }
                }
                (s, m, c)
            })
            .collect();
        let floor: Vec<i64> = (0..ns).map(|j| raw.iter().map(|r| r.0[j]).min().unwrap_or(0)).collect();
        let terms = raw
            .into_iter()
            .map(|(s, m, c)| {
                let mut e = vec![0 as coxsurf_algebra::poly::Exp; n];
                for (k, &x) in m.exps().iter().enumerate() {
                    e[self.vars[k]] = x;
                }
                for (j, &x) in s.iter().enumerate() {
                    e[self.exceptional[j]] = (x - floor[j]) as coxsurf_algebra::poly::Exp;
                }
                (Monomial::from_exps(&e), c.clone())
            })
            .collect();
        Poly::from_terms(full, terms)
    }
}

/// Integer functional positive on every column, found by the perceptron
/// update. Exists because the effective cone is pointed.
pub fn positive_weights(degrees: &[Vec<i64>]) -> Option<Vec<u32>> {
    let dim = degrees.first()?.len();
    let mut h: Vec<i64> = (0..dim).map(|k| degrees.iter().map(|d| d[k]).sum()).collect();
    for _ in 0..100_000 {
        let bad = degrees.iter().find(|d| d.iter().zip(&h).map(|(a, b)| a * b).sum::<i64>() <= 0);
        match bad {
            None => {
                return degrees
                    .iter()
                    .map(|d| u32::try_from(d.iter().zip(&h).map(|(a, b)| a * b).sum::<i64>()).ok())
                    .collect();
            }
            Some(d) => {
                for (x, y) in h.iter_mut().zip(d) {
                    *x += y;
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// `dim J' = 12`, so `J'` is the Cox ideal.
    EqualsCoxIdeal,
    /// Only `J'` contained in the Cox ideal is known.
    ContainmentOnly,
}

#[derive(Debug, Clone)]
pub struct RelationsResult<F: Field> {
    pub surface: String,
    pub ring: RingRef,
    /// Kernel of the plane map, in the ring of the non-exceptional variables.
    pub kernel: Vec<Poly<F>>,
    /// Rehomogenized kernel generators.
    pub rehomogenized: Vec<Poly<F>>,
    /// Reduced Groebner basis of `J'` for `weighted grevlex`.
    pub basis: Vec<Poly<F>>,
    /// Minimal homogeneous generators picked from the basis.
    pub generators: Vec<Poly<F>>,
    pub dimension: usize,
    pub certificate: Certificate,
    pub weights: Vec<u32>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl<F: Field> RelationsResult<F> {
    pub fn contains(&self, f: &Poly<F>, budget: Budget) -> Result<bool, GroebnerError> {
        Ok(normal_form(&f.to_ring(&self.ring), &self.basis, budget)?.is_zero())
    }
}

/// Ring on the reference variables with the weighted grevlex order.
pub fn weighted_ring(s: &SurfaceDescriptor, weights: &[u32]) -> RingRef {
    s.reference_ring(MonomialOrder::WeightedGrevLex(weights.to_vec()))
}

pub fn reference_weights(s: &SurfaceDescriptor) -> Option<Vec<u32>> {
    positive_weights(&s.reference_degrees())
}

pub fn compute_relations<F: Field>(s: &SurfaceDescriptor, budget: Budget) -> Result<RelationsResult<F>, RelationsError> {
    let map = SectionMap::<F>::from_surface(s)?;
    let degrees: Vec<DivisorClass> = s.reference.iter().map(|g| g.degree).collect();
    let rehom =
        Rehomogenizer::new(&degrees, &map.vars, &map.exceptional).ok_or_else(|| RelationsError::NotABasis(s.name.clone()))?;
    let weights = reference_weights(s).ok_or_else(|| RelationsError::NotABasis(s.name.clone()))?;
    let full = weighted_ring(s, &weights);
    let mut timings = Vec::new();

    let t = Instant::now();
    let names: Vec<&str> = map.vars.iter().map(|&i| s.reference[i].var.as_str()).collect();
    let t_weights: Vec<u32> = map.images.iter().map(|p| p.total_degree().unwrap_or(1)).collect();
    let t_ring = PolyRing::new(&names, MonomialOrder::WeightedGrevLex(t_weights));
    let kernel = ring_map_kernel(&t_ring, &map.images, budget).map_err(stage("kernel"))?;
    timings.push(("kernel", t.elapsed()));

    let t = Instant::now();
    let rehomogenized: Vec<Poly<F>> = kernel.iter().map(|g| rehom.apply(g, &full)).collect();
    let sat = saturate_by_variables(&rehomogenized, &map.exceptional, &weights, budget).map_err(stage("saturation"))?;
    timings.push(("saturation", t.elapsed()));

    let t = Instant::now();
    let basis = groebner_basis(&sat, budget).map_err(stage("basis"))?;
    let dimension = dimension_from_leading_monomials(&basis, full.nvars());
    timings.push(("dimension", t.elapsed()));

    let generators = minimal_generators_of(&basis, &weights, budget).map_err(stage("minimalize"))?;
    let certificate = if dimension == COX_DIMENSION { Certificate::EqualsCoxIdeal } else { Certificate::ContainmentOnly };
    Ok(RelationsResult {
        surface: s.name.clone(),
        ring: full,
        kernel,
        rehomogenized,
        basis,
        generators,
        dimension,
        certificate,
        weights,
        timings,
    })
}

fn wdeg<F: Field>(p: &Poly<F>, weights: &[u32]) -> u64 {
    p.leading_monomial().map_or(0, |m| m.weighted_degree(weights))
}

/// Drops basis elements lying in the ideal of the earlier (lower degree)
/// ones. The input must be homogeneous for `weights`.
pub fn minimal_generators_of<F: Field>(basis: &[Poly<F>], weights: &[u32], budget: Budget) -> Result<Vec<Poly<F>>, GroebnerError> {
    let mut sorted = basis.to_vec();
    sorted.sort_by_key(|p| wdeg(p, weights));
    let mut kept: Vec<Poly<F>> = Vec::new();
    let mut kept_basis: Vec<Poly<F>> = Vec::new();
    for p in sorted {
        if !kept_basis.is_empty() && normal_form(&p, &kept_basis, budget)?.is_zero() {
            continue;
        }
        kept.push(p);
        kept_basis = groebner_basis(&kept, budget)?;
    }
    Ok(kept)
}

/// Every monomial of every polynomial has the same degree under the
/// labeled grading. Variables are looked up by name.
pub fn verify_homogeneity<F: Field>(gens: &[Poly<F>], degrees: &[(String, Vec<i64>)]) -> Result<bool, RelationsError> {
    let Some(first) = gens.first() else { return Ok(true) };
    let ring = first.ring();
    let grading = ring
        .names()
        .iter()
        .map(|n| {
            degrees.iter().find(|d| &d.0 == n).map(|d| d.1.clone()).ok_or_else(|| RelationsError::UnknownVariable(n.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(gens.iter().all(|g| g.is_homogeneous(&grading)))
}

/// `verify_homogeneity` for the reference relations of a surface.
pub fn reference_homogeneity<F: Field>(s: &SurfaceDescriptor) -> Result<bool, RelationsError> {
    let ring = s.reference_ring(MonomialOrder::GrevLex);
    let rels = s.reference_relations::<F>(&ring)?;
    let degrees: Vec<(String, Vec<i64>)> = s.reference.iter().map(|g| (g.var.clone(), g.degree.0.to_vec())).collect();
    verify_homogeneity(&rels, &degrees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use coxsurf_algebra::Rational;

    #[test]
    fn x411_rehomogenizer() {
        let c = Catalog::bundled().unwrap();
        let s = c.get("X_411").unwrap();
        let map = SectionMap::<Rational>::from_surface(s).unwrap();
        let degrees: Vec<DivisorClass> = s.reference.iter().map(|g| g.degree).collect();
        let r = Rehomogenizer::new(&degrees, &map.vars, &map.exceptional).unwrap();
        // T3 has degree e0 - e6; its monomial uses the exceptional curves of
        // classes e6-e7, e7-e8, e8-e9, e9
        let k = map.vars.iter().position(|&i| s.reference[i].var == "T3").unwrap();
        let used: Vec<DivisorClass> = map
            .exceptional
            .iter()
            .zip(&r.exponents[k])
            .filter(|(_, &e)| e != 0)
            .map(|(&j, &e)| {
                assert_eq!(e, 1);
                degrees[j]
            })
            .collect();
        let mut want: Vec<DivisorClass> = [[6, 7], [7, 8], [8, 9]]
            .iter()
            .map(|p| DivisorClass::basis(p[0]) - DivisorClass::basis(p[1]))
            .chain([DivisorClass::basis(9)])
            .collect();
        let mut used = used;
        used.sort();
        want.sort();
        assert_eq!(used, want);
    }

    #[test]
    fn homogeneity_examples() {
        let r = PolyRing::new(&["T1"], MonomialOrder::GrevLex);
        let f: Poly<Rational> = Poly::parse(&r, "T1 + T1^2").unwrap();
        assert!(!verify_homogeneity(&[f], &[("T1".into(), vec![1])]).unwrap());
        let one: Poly<Rational> = Poly::one(&r);
        assert!(verify_homogeneity(std::slice::from_ref(&one), &[("T1".into(), vec![1])]).unwrap());
        assert!(verify_homogeneity(&[one], &[]).is_err());
    }

    #[test]
    fn weights_are_positive() {
        let c = Catalog::bundled().unwrap();
        for s in c.surfaces() {
            let w = reference_weights(s).unwrap();
            assert!(w.iter().all(|&x| x > 0));
        }
    }
}
