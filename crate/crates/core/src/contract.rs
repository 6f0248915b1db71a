//! Graded presentations of Cox rings and the blow-down operator: set the
//! variables of contracted curves to one, eliminate variables that become
//! linear, and pass to the quotient grading.

use crate::catalog::{ReferenceKind, SurfaceDescriptor};
use crate::linalg::{identity, mat_mul, smith_normal_form, IntMatrix};
use crate::picard::RANK;
use coxsurf_algebra::{Budget, Field, GroebnerError, Ideal, MonomialOrder, Poly, PolyRing, RingRef};
use serde::Serialize;

/// Finitely generated abelian group `Z^free_rank + sum Z/t` together with
/// the projection from `Cl(X) = Z^10`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// `(free_rank + torsion.len()) x 10` integer matrix.
    pub projection: IntMatrix,
}

impl Grading {
    pub fn picard() -> Self {
        Grading { free_rank: RANK, torsion: Vec::new(), projection: identity(RANK) }
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Reduces torsion coordinates into `0..t`.
    pub fn reduce(&self, v: &mut [i64]) {
        for (k, &t) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            v[i] = v[i].rem_euclid(t);
        }
    }

    pub fn project(&self, class: &[i64]) -> Vec<i64> {
        let mut v: Vec<i64> = self.projection.iter().map(|r| r.iter().zip(class).map(|(a, b)| a * b).sum()).collect();
        self.reduce(&mut v);
        v
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Quotient of `g` by the subgroup generated by the given degrees (in the
/// coordinates of `g`). Returns the new grading and the map from old to new
/// coordinates.
pub fn quotient_grading(g: &Grading, removed: &[Vec<i64>]) -> (Grading, IntMatrix) {
    let n = g.dim();
    let mut cols: Vec<Vec<i64>> = removed.to_vec();
    for (k, &t) in g.torsion.iter().enumerate() {
        let mut c = vec![0; n];
        c[g.free_rank + k] = t;
        cols.push(c);
    }
    let m: IntMatrix = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let s = smith_normal_form(&m, cols.len());
    let rank = s.rank();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rank {
        if s.diagonal[i] > 1 {
            torsion_rows.push(i);
            torsion.push(s.diagonal[i]);
        }
    }
    let rows: Vec<usize> = (rank..n).chain(torsion_rows).collect();
    let map: IntMatrix = rows.iter().map(|&i| s.u[i].clone()).collect();
    let mut out = Grading { free_rank: n - rank, torsion, projection: mat_mul(&map, &g.projection) };
    for row in 0..out.dim() {
        if row >= out.free_rank {
            let t = out.torsion[row - out.free_rank];
            for x in out.projection[row].iter_mut() {
                *x = x.rem_euclid(t);
            }
        }
    }
    (out, map)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContractError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("{0} is not a negative-curve generator")]
    NotACurve(String),
}

#[derive(Debug, Clone)]
pub struct GradedPresentation<F: Field> {
    pub name: String,
    pub ring: RingRef,
    /// Degree of each variable in the coordinates of `grading`.
    pub degrees: Vec<Vec<i64>>,
    pub grading: Grading,
    /// Whether each variable defines a negative curve.
    pub curve: Vec<bool>,
    pub relations: Vec<Poly<F>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationView {
    pub name: String,
    pub variables: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub grading: String,
    pub relations: Vec<String>,
}

impl<F: Field> GradedPresentation<F> {
    /// The reference presentation of a surface.
    pub fn from_surface(s: &SurfaceDescriptor) -> Result<Self, crate::catalog::CatalogError> {
        let ring = s.reference_ring(MonomialOrder::GrevLex);
        let relations = s.reference_relations(&ring)?;
        Ok(GradedPresentation {
            name: s.name.clone(),
            ring,
            degrees: s.reference_degrees(),
            grading: Grading::picard(),
            curve: s.reference.iter().map(|g| matches!(g.kind, ReferenceKind::Curve(_))).collect(),
            relations,
        })
    }

    pub fn variables(&self) -> &[String] {
        self.ring.names()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ContractError> {
        self.ring.index_of(name).ok_or_else(|| ContractError::UnknownVariable(name.to_string()))
    }

    /// Reduced degree of each term of a relation.
    fn term_degrees(&self, r: &Poly<F>) -> Vec<Vec<i64>> {
        r.terms()
            .iter()
            .map(|(m, _)| {
                let mut d = vec![0i64; self.grading.dim()];
                for (i, &e) in m.exps().iter().enumerate() {
                    for (k, x) in d.iter_mut().enumerate() {
                        *x += self.degrees[i][k] * e as i64;
                    }
                }
                self.grading.reduce(&mut d);
                d
            })
            .collect()
    }

    /// Every relation has a single degree, torsion taken into account.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| self.term_degrees(r).windows(2).all(|w| w[0] == w[1]))
    }

    /// Degree of each relation, `None` for an inhomogeneous one.
    pub fn relation_degrees(&self) -> Vec<Option<Vec<i64>>> {
        self.relations
            .iter()
            .map(|r| {
                let t = self.term_degrees(r);
                match t.split_first() {
                    Some((first, rest)) if rest.iter().all(|d| d == first) => Some(first.clone()),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal::new(&self.ring, self.relations.clone()).expect("relations live in the ring")
    }

    pub fn krull_dimension(&self, budget: Budget) -> Result<usize, GroebnerError> {
        if self.relations.is_empty() {
            return Ok(self.ring.nvars());
        }
        self.ideal().krull_dimension(budget)
    }

    /// Relations printed and sorted by (degree, text).
    pub fn relation_strings(&self) -> Vec<String> {
        let mut v: Vec<(u32, String)> =
            self.relations.iter().map(|r| (r.total_degree().unwrap_or(0), r.to_string())).collect();
        v.sort();
        v.into_iter().map(|x| x.1).collect()
    }

    pub fn view(&self) -> PresentationView {
        PresentationView {
            name: self.name.clone(),
            variables: self.variables().to_vec(),
            degrees: self.degrees.clone(),
            grading: self.grading.describe(),
            relations: self.relation_strings(),
        }
    }

    /// Same presentation on the variables `keep` (indices, in order), with
    /// every other variable sent to `images`.
    fn restrict(&self, keep: &[usize], images: impl Fn(usize, &RingRef) -> Poly<F>) -> (RingRef, Vec<Poly<F>>) {
        let names: Vec<&str> = keep.iter().map(|&i| self.ring.names()[i].as_str()).collect();
        let ring = PolyRing::new(&names, MonomialOrder::GrevLex);
        let imgs: Vec<Poly<F>> = (0..self.ring.nvars())
            .map(|i| match keep.iter().position(|&k| k == i) {
                Some(j) => Poly::var(&ring, j),
                None => images(i, &ring),
            })
            .collect();
        let mut rels: Vec<Poly<F>> = Vec::new();
        for r in &self.relations {
            let p = r.substitute(&ring, &imgs).expect("images share a ring");
            if !p.is_zero() && !rels.contains(&p) {
                rels.push(p);
            }
        }
        (ring, rels)
    }
}

/// Sets the variables of contracted curves to one and passes to the
/// quotient of the grading by their degrees.
pub fn contract_cox<F: Field>(p: &GradedPresentation<F>, removed: &[&str]) -> Result<GradedPresentation<F>, ContractError> {
    let mut idx = Vec::new();
    for name in removed {
        let i = p.index_of(name)?;
        if !p.curve[i] {
            return Err(ContractError::NotACurve(name.to_string()));
        }
        if !idx.contains(&i) {
            idx.push(i);
        }
    }
    if idx.is_empty() {
        return Ok(p.clone());
    }
    let keep: Vec<usize> = (0..p.ring.nvars()).filter(|i| !idx.contains(i)).collect();
    let (ring, relations) = p.restrict(&keep, |_, r| Poly::one(r));
    let removed_degrees: Vec<Vec<i64>> = idx.iter().map(|&i| p.degrees[i].clone()).collect();
    let (grading, map) = quotient_grading(&p.grading, &removed_degrees);
    let degrees = keep
        .iter()
        .map(|&i| {
            let mut d: Vec<i64> = map.iter().map(|r| r.iter().zip(&p.degrees[i]).map(|(a, b)| a * b).sum()).collect();
            grading.reduce(&mut d);
            d
        })
        .collect();
    Ok(GradedPresentation {
        name: p.name.clone(),
        ring,
        degrees,
        grading,
        curve: keep.iter().map(|&i| p.curve[i]).collect(),
        relations,
    })
}

/// A variable `T_v` and a relation `c T_v + g` with `g` free of `T_v`.
fn linear_candidate<F: Field>(p: &GradedPresentation<F>) -> Option<(usize, usize)> {
    for v in 0..p.ring.nvars() {
        for (k, r) in p.relations.iter().enumerate() {
            let mut linear = 0;
            let mut other = false;
            for (m, _) in r.terms() {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if e == 1 && m.degree() == 1 {
                    linear += 1;
                } else {
                    other = true;
                }
            }
            if linear == 1 && !other {
                return Some((v, k));
            }
        }
    }
    None
}

/// Repeatedly solves a relation for a variable occurring only as a pure
/// linear term, lowest variable index first.
pub fn eliminate_linear<F: Field>(p: &GradedPresentation<F>) -> GradedPresentation<F> {
    let mut cur = p.clone();
    while let Some((v, k)) = linear_candidate(&cur) {
        let r = &cur.relations[k];
        let unit = coxsurf_algebra::Monomial::var(cur.ring.nvars(), v, 1);
        let c = r.coefficient(&unit);
        let c_inv = c.inv().expect("nonzero coefficient");
        // T_v = -(r - c T_v) / c
        let rest = r.sub(&Poly::term(&cur.ring, unit, c.clone()));
        let solution = rest.scale(&c_inv.neg());
        let mut without = cur.clone();
        without.relations.remove(k);
        let keep: Vec<usize> = (0..cur.ring.nvars()).filter(|&i| i != v).collect();
        // the solution does not involve T_v, so its slot in the map is unused
        let map: Vec<usize> = (0..cur.ring.nvars()).map(|i| if i <= v { i.min(keep.len() - 1) } else { i - 1 }).collect();
        let (ring, relations) = without.restrict(&keep, |_, r| solution.rename(r, &map));
        cur = GradedPresentation {
            name: cur.name.clone(),
            ring,
            degrees: keep.iter().map(|&i| cur.degrees[i].clone()).collect(),
            grading: cur.grading.clone(),
            curve: keep.iter().map(|&i| cur.curve[i]).collect(),
            relations,
        };
    }
    cur
}

/// Whether two presentations on the same variable names have the same ideal.
pub fn presentations_equal<F: Field>(a: &GradedPresentation<F>, b: &GradedPresentation<F>, budget: Budget) -> Result<bool, GroebnerError> {
    if a.variables() != b.variables() {
        return Ok(false);
    }
    let rels: Vec<Poly<F>> = b.relations.iter().map(|r| r.to_ring(&a.ring)).collect();
    let other = Ideal::new(&a.ring, rels)?;
    a.ideal().equals(&other, budget)
}

/// Signs `s_i` with `f(s_1 T_1, ..., s_n T_n) = +-g`, for polynomials on
/// the same variables whose coefficients agree up to sign. Returns the set
/// of flipped variables.
pub fn equal_up_to_sign_change<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Option<Vec<usize>> {
    let n = f.ring().nvars();
    if f.ring().names() != g.ring().names() || f.len() != g.len() || n > 120 {
        return None;
    }
    let g = g.to_ring(f.ring());
    // unknowns: one bit per variable plus a global sign, over GF(2)
    let mut rows: Vec<(u128, bool)> = Vec::new();
    for (m, c) in f.terms() {
        let d = g.coefficient(m);
        let parity = if d == *c {
            false
        } else if d == c.neg() && !d.is_zero() {
            true
        } else {
            return None;
        };
        let mut bits = 1u128 << n;
        for (i, &e) in m.exps().iter().enumerate() {
            if e % 2 == 1 {
                bits |= 1 << i;
            }
        }
        rows.push((bits, parity));
    }
    let mut pivots: Vec<(usize, u128, bool)> = Vec::new();
    for (mut bits, mut rhs) in rows {
        for &(col, pb, pr) in &pivots {
            if bits >> col & 1 == 1 {
                bits ^= pb;
                rhs ^= pr;
            }
        }
        if bits == 0 {
            if rhs {
                return None;
            }
            continue;
        }
        let col = bits.trailing_zeros() as usize;
        for p in pivots.iter_mut() {
            if p.1 >> col & 1 == 1 {
                p.1 ^= bits;
                p.2 ^= rhs;
            }
        }
        pivots.push((col, bits, rhs));
    }
    // free variables set to zero
    let mut flipped = Vec::new();
    for &(col, _, rhs) in &pivots {
        if rhs && col < n {
            flipped.push(col);
        }
    }
    flipped.sort_unstable();
    Some(flipped)
}

const BUNDLED_TARGETS: &str = include_str!("../data/contractions.txt");

/// A blow-down with its expected Cox ring.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionTarget {
    pub name: String,
    pub surface: String,
    pub removed: Vec<String>,
    pub grading: String,
    pub relations: Vec<String>,
}

pub fn parse_targets(text: &str) -> Result<Vec<ContractionTarget>, String> {
    let mut out: Vec<ContractionTarget> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(head) = line.strip_prefix('@') {
            let parts: Vec<&str> = head.split(':').map(str::trim).collect();
            let [name, surface, removed, grading] = parts.as_slice() else {
                return Err(format!("line {}: expected 4 header fields", n + 1));
            };
            out.push(ContractionTarget {
                name: name.to_string(),
                surface: surface.to_string(),
                removed: removed.split_whitespace().map(String::from).collect(),
                grading: grading.to_string(),
                relations: Vec::new(),
            });
        } else {
            out.last_mut().ok_or(format!("line {}: relation before header", n + 1))?.relations.push(line.to_string());
        }
    }
    Ok(out)
}

pub fn bundled_targets() -> Vec<ContractionTarget> {
    parse_targets(BUNDLED_TARGETS).expect("bundled contraction data parses")
}

#[derive(Debug, Clone)]
pub struct ContractionOutcome<F: Field> {
    pub presentation: GradedPresentation<F>,
    pub grading_matches: bool,
    pub ideal_matches: bool,
    /// Variables whose sign had to change, for single relations compared
    /// up to sign.
    pub sign_changes: Vec<String>,
}

/// Contracts, eliminates linear variables and compares with the target.
/// A single relation is compared up to changing the signs of variables.
pub fn run_contraction<F: Field>(
    s: &SurfaceDescriptor,
    target: &ContractionTarget,
    budget: Budget,
) -> Result<ContractionOutcome<F>, Box<dyn std::error::Error + Send + Sync>> {
    let full = GradedPresentation::<F>::from_surface(s)?;
    let removed: Vec<&str> = target.removed.iter().map(String::as_str).collect();
    let p = eliminate_linear(&contract_cox(&full, &removed)?);
    let grading_matches = p.grading.describe() == target.grading;
    let expected = target
        .relations
        .iter()
        .map(|r| Poly::parse(&p.ring, r))
        .collect::<Result<Vec<Poly<F>>, _>>()?;
    let mut sign_changes = Vec::new();
    let ideal_matches = if expected.len() == 1 && p.relations.len() == 1 {
        match equal_up_to_sign_change(&p.relations[0], &expected[0]) {
            Some(flips) => {
                sign_changes = flips.iter().map(|&i| p.ring.names()[i].clone()).collect();
                true
            }
            None => false,
        }
    } else {
        p.ideal().equals(&Ideal::new(&p.ring, expected)?, budget)?
    };
    Ok(ContractionOutcome { presentation: p, grading_matches, ideal_matches, sign_changes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxsurf_algebra::Rational;

    fn pres(names: &[&str], rels: &[&str], degrees: Vec<Vec<i64>>) -> GradedPresentation<Rational> {
        let ring = PolyRing::new(names, MonomialOrder::GrevLex);
        let dim = degrees[0].len();
        GradedPresentation {
            name: "test".into(),
            relations: rels.iter().map(|r| Poly::parse(&ring, r).unwrap()).collect(),
            ring,
            degrees,
            grading: Grading { free_rank: dim, torsion: vec![], projection: identity(dim) },
            curve: vec![true; names.len()],
        }
    }

    #[test]
    fn linear_elimination() {
        let p = pres(&["T1", "T2", "T3"], &["T1 - T2*T3"], vec![vec![2], vec![1], vec![1]]);
        let q = eliminate_linear(&p);
        assert_eq!(q.variables(), &["T2".to_string(), "T3".to_string()]);
        assert!(q.relations.is_empty());
        let p = pres(&["x", "y"], &["x^2 - y^3"], vec![vec![3], vec![2]]);
        let q = eliminate_linear(&p);
        assert_eq!(q.relations.len(), 1);
        assert_eq!(q.variables().len(), 2);
    }

    #[test]
    fn elimination_substitutes() {
        let p = pres(&["a", "b", "c"], &["b*c + 2*a", "a*b - c^3"], vec![vec![2], vec![1], vec![1]]);
        let q = eliminate_linear(&p);
        assert_eq!(q.variables(), &["b".to_string(), "c".to_string()]);
        // a = -bc/2
        let want = Poly::parse(&q.ring, "-1/2*b^2*c - c^3").unwrap();
        assert_eq!(q.relations, vec![want]);
    }

    #[test]
    fn quotient_groups() {
        let g = Grading::picard();
        let (q, _) = quotient_grading(&g, &[]);
        assert_eq!((q.free_rank, q.torsion.clone()), (10, vec![]));
        let two: Vec<i64> = (0..10).map(|i| if i == 1 { 2 } else { 0 }).collect();
        let (q, _) = quotient_grading(&g, &[two]);
        assert_eq!((q.free_rank, q.torsion.clone()), (9, vec![2]));
        // a further quotient by the torsion generator kills it
        let e1: Vec<i64> = (0..10).map(|i| i64::from(i == 1)).collect();
        let d = q.project(&e1);
        let (q2, _) = quotient_grading(&q, &[d]);
        assert_eq!((q2.free_rank, q2.torsion.clone()), (9, vec![]));
    }

    #[test]
    fn signs() {
        let r = PolyRing::new(&["a", "b", "c"], MonomialOrder::GrevLex);
        let f: Poly<Rational> = Poly::parse(&r, "a*b^2 + c^3 - a^2*c").unwrap();
        let g: Poly<Rational> = Poly::parse(&r, "a*b^2 - c^3 + a^2*c").unwrap();
        let flips = equal_up_to_sign_change(&f, &g).unwrap();
        assert_eq!(flips, vec![2]);
        let h: Poly<Rational> = Poly::parse(&r, "a*b^2 + 2*c^3 - a^2*c").unwrap();
        assert!(equal_up_to_sign_change(&f, &h).is_none());
        assert_eq!(equal_up_to_sign_change(&f, &f), Some(vec![]));
        // parities of the three terms are inconsistent
        let k: Poly<Rational> = Poly::parse(&r, "a*b^2 - c^3 - a^2*c").unwrap();
        assert!(equal_up_to_sign_change(&f, &k).is_none());
    }
}
