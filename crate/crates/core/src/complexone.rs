//! Surfaces with a one-dimensional torus action: Hirzebruch-Jung continued
//! fractions, the graphs of negative curves of their equivariant
//! resolutions, and the stored Cox presentations.

use crate::catalog::{canonical_name, CatalogError, SurfaceDescriptor};
use crate::contract::GradedPresentation;
use coxsurf_algebra::{Field, Rational};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HjValue {
    Value(Rational),
    Pole,
}

/// Continued fraction matrix product: `[a1,...,an] = p/q` with
/// `(p, q) = M(a1) ... M(an) (1, 0)`, `M(a) = [[a, -1], [1, 0]]`.
fn hj_pair(q: &[Rational]) -> (Rational, Rational) {
    let mut p = (Rational::from(1), Rational::from(0));
    for a in q.iter().rev() {
        p = (a.mul(&p.0).sub(&p.1), p.0);
    }
    p
}

/// `a1 - 1/(a2 - 1/(... - 1/an))`.
pub fn hj_eval(q: &[Rational]) -> Option<HjValue> {
    let (last, rest) = q.split_last()?;
    let mut v = last.clone();
    for a in rest.iter().rev() {
        let Ok(inv) = v.inv() else { return Some(HjValue::Pole) };
        v = a.sub(&inv);
    }
    Some(HjValue::Value(v))
}

pub fn hj_eval_ints(q: &[i64]) -> Option<HjValue> {
    hj_eval(&q.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HjError {
    #[error("expected exactly one unknown")]
    UnknownCount,
    #[error("no value of the unknown gives the target")]
    NoSolution,
    #[error("every value of the unknown gives the target")]
    Degenerate,
}

/// Entry of a continued fraction with at most one unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HjEntry {
    Known(Rational),
    Unknown,
}

impl std::str::FromStr for HjEntry {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "x" || s == "?" {
            return Ok(HjEntry::Unknown);
        }
        let q = match s.split_once('/') {
            Some((a, b)) => {
                let (a, b) = (a.trim().parse::<i64>(), b.trim().parse::<i64>());
                match (a, b) {
                    (Ok(a), Ok(b)) => Rational::new(a, b).map_err(|e| e.to_string())?,
                    _ => return Err(format!("bad entry {s}")),
                }
            }
            None => Rational::from(s.parse::<i64>().map_err(|_| format!("bad entry {s}"))?),
        };
        Ok(HjEntry::Known(q))
    }
}

/// The value of the single unknown making the fraction equal `target`.
/// The value is linear fractional in the unknown, `(a x + b) / (c x + d)`.
pub fn hj_solve_unknown(q: &[HjEntry], target: &Rational) -> Result<Rational, HjError> {
    let pos: Vec<usize> = q.iter().enumerate().filter(|(_, e)| **e == HjEntry::Unknown).map(|(i, _)| i).collect();
    let [k] = pos.as_slice() else { return Err(HjError::UnknownCount) };
    let known = |i: usize| match &q[i] {
        HjEntry::Known(r) => r.clone(),
        HjEntry::Unknown => Rational::from(0),
    };
    let tail: Vec<Rational> = (k + 1..q.len()).map(known).collect();
    let head: Vec<Rational> = (0..*k).map(known).collect();
    // (p, r) for the tail, with the empty tail giving (1, 0)
    let (p, r) = hj_pair(&tail);
    // the unknown's step: (x p - r, p); then the head matrices
    let apply_head = |v: (Rational, Rational)| {
        let mut v = v;
        for a in head.iter().rev() {
            v = (a.mul(&v.0).sub(&v.1), v.0);
        }
        v
    };
    // linear in x: v(x) = x * A + B
    let a = apply_head((p.clone(), Rational::from(0)));
    let b0 = apply_head((r.neg(), p.clone()));
    let zero = apply_head((Rational::from(0), Rational::from(0)));
    let a = (a.0.sub(&zero.0), a.1.sub(&zero.1));
    // numerator - target * denominator = 0
    let coef = a.0.sub(&target.mul(&a.1));
    let cst = b0.0.sub(&target.mul(&b0.1));
    if coef.is_zero() {
        return Err(if cst.is_zero() { HjError::Degenerate } else { HjError::NoSolution });
    }
    let x = cst.neg().div(&coef).map_err(|_| HjError::NoSolution)?;
    // reject solutions passing through an interior pole
    let full: Vec<Rational> = q.iter().enumerate().map(|(i, _)| if i == *k { x.clone() } else { known(i) }).collect();
    match hj_eval(&full) {
        Some(HjValue::Value(v)) if v == *target => Ok(x),
        _ => Err(HjError::NoSolution),
    }
}

/// A vertex of the graph of negative curves of the resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OwVertex {
    /// Cox ring variable for black vertices, `E<k>` for exceptional ones.
    pub label: String,
    pub self_intersection: i64,
    pub exceptional: bool,
}

/// Two end vertices joined by arms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OwGraph {
    pub surface: String,
    pub left: OwVertex,
    pub right: OwVertex,
    pub arms: Vec<Vec<OwVertex>>,
}

fn v(label: &str, s: i64) -> OwVertex {
    let exceptional = label.starts_with('E');
    OwVertex { label: label.to_string(), self_intersection: s, exceptional }
}

pub const COMPLEXITY_ONE: [&str; 4] = ["X_22", "X_33", "X_44", "X_11(a)"];

#[derive(Debug, thiserror::Error)]
pub enum ComplexOneError {
    #[error("{0} has no torus action in the catalog")]
    NotComplexityOne(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

pub fn ow_graph(name: &str) -> Result<OwGraph, ComplexOneError> {
    let canon = canonical_name(name).ok_or_else(|| ComplexOneError::NotComplexityOne(name.to_string()))?;
    let arm = |xs: &[(&str, i64)]| xs.iter().map(|&(l, s)| v(l, s)).collect::<Vec<_>>();
    let g = match canon {
        "X_22" => OwGraph {
            surface: canon.into(),
            left: v("T7", -2),
            right: v("E1", -1),
            arms: vec![
                arm(&[("T8", -2), ("T9", -2), ("T10", -2), ("T11", -2), ("T12", -2), ("T13", -1), ("T4", -6)]),
                arm(&[("T1", -2), ("T3", -1), ("E2", -2)]),
                arm(&[("T6", -2), ("T5", -2), ("T2", -1), ("E3", -3)]),
            ],
        },
        "X_33" => OwGraph {
            surface: canon.into(),
            left: v("T6", -2),
            right: v("E1", -1),
            arms: vec![
                arm(&[("T1", -2), ("T11", -2), ("T12", -2), ("T13", -1), ("T2", -4)]),
                arm(&[("T5", -2), ("T4", -1), ("E2", -2)]),
                arm(&[("T7", -2), ("T8", -2), ("T9", -2), ("T10", -1), ("T3", -4)]),
            ],
        },
        "X_44" => OwGraph {
            surface: canon.into(),
            left: v("T1", -2),
            right: v("E1", -1),
            arms: vec![
                arm(&[("T5", -2), ("T6", -2), ("T7", -1), ("T2", -3)]),
                arm(&[("T8", -2), ("T9", -2), ("T10", -1), ("T3", -3)]),
                arm(&[("T11", -2), ("T12", -2), ("T13", -1), ("T4", -3)]),
            ],
        },
        "X_11(a)" => OwGraph {
            surface: canon.into(),
            left: v("T12", -2),
            right: v("T4", -2),
            arms: vec![
                arm(&[("T1", -2), ("T7", -1), ("T6", -2)]),
                arm(&[("T2", -2), ("T9", -1), ("T8", -2)]),
                arm(&[("T3", -2), ("T11", -1), ("T10", -2)]),
                arm(&[("T13", -2), ("T14", -1), ("T5", -2)]),
            ],
        },
        other => return Err(ComplexOneError::NotComplexityOne(other.to_string())),
    };
    Ok(g)
}

impl OwGraph {
    /// Negated self-intersections along each arm, from the left end.
    pub fn arm_fractions(&self) -> Vec<Vec<i64>> {
        self.arms.iter().map(|a| a.iter().map(|v| -v.self_intersection).collect()).collect()
    }

    pub fn vertices(&self) -> Vec<&OwVertex> {
        std::iter::once(&self.left).chain(self.arms.iter().flatten()).chain(std::iter::once(&self.right)).collect()
    }

    pub fn black_labels(&self) -> Vec<&str> {
        self.vertices().into_iter().filter(|v| !v.exceptional).map(|v| v.label.as_str()).collect()
    }

    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for arm in &self.arms {
            let mut prev = &self.left;
            for x in arm {
                out.push((prev.label.as_str(), x.label.as_str()));
                prev = x;
            }
            out.push((prev.label.as_str(), self.right.label.as_str()));
        }
        out
    }

    pub fn adjacency_text(&self) -> String {
        let mut out = String::new();
        for x in self.vertices() {
            let nb: Vec<&str> = self
                .edges()
                .into_iter()
                .filter_map(|(a, b)| if a == x.label { Some(b) } else if b == x.label { Some(a) } else { None })
                .collect();
            let mark = if x.exceptional { " exceptional" } else { "" };
            out.push_str(&format!("{} ({}{}): {}\n", x.label, x.self_intersection, mark, nb.join(" ")));
        }
        out
    }
}

/// Disagreements between a graph and the catalog data of its surface.
///
/// Black vertices are the Cox ring generators, each once. Adjacent black
/// vertices that are negative curves of the surface meet there. A negative
/// curve with no exceptional neighbor keeps its self-intersection.
pub fn check_graph(g: &OwGraph, s: &SurfaceDescriptor) -> Vec<String> {
    let mut problems = Vec::new();
    for (k, arm) in g.arm_fractions().iter().enumerate() {
        if hj_eval_ints(arm) != Some(HjValue::Value(Rational::from(0))) {
            problems.push(format!("arm {} fraction {:?} is not 0", k + 1, arm));
        }
    }
    let mut black: Vec<&str> = g.black_labels();
    black.sort_unstable();
    let mut vars: Vec<&str> = s.reference.iter().map(|r| r.var.as_str()).collect();
    vars.sort_unstable();
    if black != vars {
        problems.push(format!("black vertices {black:?} differ from generators"));
    }
    let curve_class = |label: &str| {
        s.reference.iter().find(|r| r.var == label).and_then(|r| match &r.kind {
            crate::catalog::ReferenceKind::Curve(_) => Some(r.degree),
            _ => None,
        })
    };
    let edges = g.edges();
    for (a, b) in &edges {
        if let (Some(x), Some(y)) = (curve_class(a), curve_class(b)) {
            if x.dot(&y) <= 0 {
                problems.push(format!("{a} and {b} are adjacent but do not meet"));
            }
        }
    }
    for x in g.vertices() {
        let Some(c) = curve_class(&x.label) else { continue };
        let touches_exceptional = edges.iter().any(|(a, b)| {
            let other = if *a == x.label { Some(*b) } else if *b == x.label { Some(*a) } else { None };
            other.is_some_and(|o| o.starts_with('E'))
        });
        if !touches_exceptional && c.square() != x.self_intersection {
            problems.push(format!("{} has square {} on the surface, {} in the graph", x.label, c.square(), x.self_intersection));
        }
    }
    problems
}

/// The stored Cox presentation of one of the four surfaces.
pub fn complexity_one_presentation<F: Field>(s: &SurfaceDescriptor) -> Result<GradedPresentation<F>, ComplexOneError> {
    if !COMPLEXITY_ONE.contains(&s.name.as_str()) {
        return Err(ComplexOneError::NotComplexityOne(s.name.clone()));
    }
    Ok(GradedPresentation::from_surface(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero() -> Option<HjValue> {
        Some(HjValue::Value(Rational::from(0)))
    }

    #[test]
    fn fractions() {
        assert_eq!(hj_eval_ints(&[2, 2, 2, 2, 2, 1, 6]), zero());
        assert_eq!(hj_eval_ints(&[2, 1, 2]), zero());
        assert_eq!(hj_eval_ints(&[2, 2, 1, 3]), zero());
        assert_eq!(hj_eval_ints(&[2]), Some(HjValue::Value(Rational::from(2))));
        assert_eq!(hj_eval_ints(&[3, 2]), Some(HjValue::Value(Rational::new(5, 2).unwrap())));
        assert_eq!(hj_eval_ints(&[1, 0, 2]), Some(HjValue::Value(Rational::from(3))));
        assert_eq!(hj_eval_ints(&[1, 0]), Some(HjValue::Pole));
        assert_eq!(hj_eval_ints(&[]), None);
    }

    fn parse(s: &str) -> Vec<HjEntry> {
        s.split(',').map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn unknowns() {
        let zero = Rational::from(0);
        assert_eq!(hj_solve_unknown(&parse("2,2,2,2,2,x,6"), &zero), Ok(Rational::from(1)));
        assert_eq!(hj_solve_unknown(&parse("2,x,2"), &zero), Ok(Rational::from(1)));
        assert_eq!(hj_solve_unknown(&parse("2,2,x,3"), &zero), Ok(Rational::from(1)));
        assert_eq!(hj_solve_unknown(&parse("x"), &Rational::from(5)), Ok(Rational::from(5)));
        assert_eq!(hj_solve_unknown(&parse("x,1,2"), &zero), Ok(Rational::from(2)));
        assert_eq!(hj_solve_unknown(&parse("x,2,2,2,1,4"), &zero), Err(HjError::NoSolution));
        assert_eq!(hj_solve_unknown(&parse("2,2"), &zero), Err(HjError::UnknownCount));
        assert_eq!(hj_solve_unknown(&parse("x,x"), &zero), Err(HjError::UnknownCount));
    }

    #[test]
    fn graphs_shapes() {
        let g = ow_graph("X_22").unwrap();
        assert_eq!(g.arm_fractions(), vec![vec![2, 2, 2, 2, 2, 1, 6], vec![2, 1, 2], vec![2, 2, 1, 3]]);
        assert_eq!(g.black_labels().len(), 13);
        assert_eq!(ow_graph("X_11a").unwrap().arms.len(), 4);
        assert!(ow_graph("X_411").is_err());
        assert!(g.adjacency_text().contains("T7 (-2): T8 T1 T6"));
    }
}
