//! Minimal generators of the Cox ring and their degree matrices.

use crate::catalog::{ReferenceKind, SurfaceDescriptor};
use crate::curves::{conic_bundles_with_unique_reducible_fiber, type_iv_generator_divisors};
use crate::linalg::{determinant, solve_unimodular, IntMatrix};
use crate::picard::{DivisorClass, RANK};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GeneratorKind {
    MinusOneCurve,
    MinusTwoCurve,
    ConicFiber,
    EllipticFiber,
    TypeIv,
}

impl GeneratorKind {
    /// Coarse kind used to compare with the reference presentation, which
    /// does not separate (-1)- from (-2)-curves.
    pub fn coarse(self) -> ReferenceKindTag {
        match self {
            GeneratorKind::MinusOneCurve | GeneratorKind::MinusTwoCurve => ReferenceKindTag::Curve,
            GeneratorKind::ConicFiber => ReferenceKindTag::Conic,
            GeneratorKind::EllipticFiber => ReferenceKindTag::Fiber,
            GeneratorKind::TypeIv => ReferenceKindTag::TypeIv,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::MinusOneCurve => "(-1)-curve",
            GeneratorKind::MinusTwoCurve => "(-2)-curve",
            GeneratorKind::ConicFiber => "conic",
            GeneratorKind::EllipticFiber => "fiber",
            GeneratorKind::TypeIv => "type-iv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ReferenceKindTag {
    Curve,
    Conic,
    Fiber,
    TypeIv,
}

impl From<&ReferenceKind> for ReferenceKindTag {
    fn from(k: &ReferenceKind) -> Self {
        match k {
            ReferenceKind::Curve(_) => ReferenceKindTag::Curve,
            ReferenceKind::Conic => ReferenceKindTag::Conic,
            ReferenceKind::Fiber => ReferenceKindTag::Fiber,
            ReferenceKind::TypeIv => ReferenceKindTag::TypeIv,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    /// Curve label for negative curves, otherwise a descriptive tag.
    pub label: String,
    pub kind: GeneratorKind,
    pub degree: DivisorClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSet {
    pub surface: String,
    pub entries: Vec<Generator>,
    /// Indices of the exceptional curves of the blow-up (the S-variables),
    /// always the last nine entries.
    pub exceptional: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("{0}: found {1} exceptional curves, expected 9")]
    ExceptionalCount(String, usize),
    #[error("{0}: exceptional degrees are not a basis of e1..e9")]
    NotABasis(String),
    #[error("matrices have different shapes")]
    Shape,
    #[error("no column and row permutation matches")]
    NoMatch,
}

/// Negative curves, a fiber of `pi` if it has one reducible fiber, a smooth
/// fiber of each conic bundle with a unique reducible fiber, and the
/// type (iv) classes.
pub fn minimal_generators(s: &SurfaceDescriptor) -> Result<GeneratorSet, GeneratorError> {
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for c in &s.curves {
        let kind = if c.class.square() == -1 { GeneratorKind::MinusOneCurve } else { GeneratorKind::MinusTwoCurve };
        let g = Generator { label: c.label.clone(), kind, degree: c.class };
        // curves contracted by the blow-down to the plane
        if c.class.0[0] == 0 {
            tail.push(g);
        } else {
            head.push(g);
        }
    }
    for (i, cb) in conic_bundles_with_unique_reducible_fiber(s).into_iter().enumerate() {
        head.push(Generator { label: format!("C{}", i + 1), kind: GeneratorKind::ConicFiber, degree: cb.class });
    }
    if s.reducible_fibers().len() == 1 {
        head.push(Generator { label: "F".into(), kind: GeneratorKind::EllipticFiber, degree: DivisorClass::fiber() });
    }
    for (i, t) in type_iv_generator_divisors(s).into_iter().enumerate() {
        head.push(Generator { label: format!("D{}", i + 1), kind: GeneratorKind::TypeIv, degree: t.class });
    }
    if tail.len() != 9 {
        return Err(GeneratorError::ExceptionalCount(s.name.clone(), tail.len()));
    }
    let block: IntMatrix = (1..RANK).map(|r| tail.iter().map(|g| g.degree.0[r]).collect()).collect();
    if determinant(&block).abs() != 1 {
        return Err(GeneratorError::NotABasis(s.name.clone()));
    }
    let n = head.len();
    head.extend(tail);
    Ok(GeneratorSet { surface: s.name.clone(), exceptional: (n..n + 9).collect(), entries: head })
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degrees(&self) -> Vec<DivisorClass> {
        self.entries.iter().map(|g| g.degree).collect()
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.len()).map(|i| format!("T{i}")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Basis {
    /// Coordinates in `e0, ..., e9`.
    E,
    /// `e0`-coefficient followed by coordinates in the exceptional degrees.
    Graded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMatrix {
    pub basis: Basis,
    pub rows: IntMatrix,
    pub labels: Vec<String>,
    pub kinds: Vec<ReferenceKindTag>,
}

impl DegreeMatrix {
    pub fn cols(&self) -> usize {
        self.labels.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Rows of space-separated integers.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn from_columns(cols: &[Vec<i64>], basis: Basis, labels: Vec<String>, kinds: Vec<ReferenceKindTag>) -> DegreeMatrix {
    let rows = (0..RANK).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    DegreeMatrix { basis, rows, labels, kinds }
}

pub fn degree_matrix(g: &GeneratorSet, basis: Basis) -> Result<DegreeMatrix, GeneratorError> {
    let labels = g.entries.iter().map(|e| e.label.clone()).collect();
    let kinds = g.entries.iter().map(|e| e.kind.coarse()).collect();
    let raw: Vec<Vec<i64>> = g.entries.iter().map(|e| e.degree.0.to_vec()).collect();
    match basis {
        Basis::E => Ok(from_columns(&raw, basis, labels, kinds)),
        Basis::Graded => {
            let b = graded_basis(g);
            let cols = raw
                .iter()
                .map(|d| solve_unimodular(&b, d).ok_or_else(|| GeneratorError::NotABasis(g.surface.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(from_columns(&cols, basis, labels, kinds))
        }
    }
}

/// Matrix with columns `e0, deg S1, ..., deg S9`.
pub fn graded_basis(g: &GeneratorSet) -> IntMatrix {
    let mut cols = vec![DivisorClass::basis(0)];
    cols.extend(g.exceptional.iter().map(|&i| g.entries[i].degree));
    (0..RANK).map(|r| cols.iter().map(|c| c.0[r]).collect()).collect()
}

/// The reference presentation's degree matrix in the e-basis.
pub fn reference_matrix(s: &SurfaceDescriptor) -> DegreeMatrix {
    let cols = s.reference_degrees();
    let labels = s.reference.iter().map(|g| g.var.clone()).collect();
    let kinds = s.reference.iter().map(|g| ReferenceKindTag::from(&g.kind)).collect();
    from_columns(&cols, Basis::E, labels, kinds)
}

/// A matching of two degree matrices: `rows[i]` is the reference row of
/// computed row `i`, `columns[j]` the reference column of computed column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixMatch {
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
}

/// Finds a column permutation, together with a permutation of the rows
/// `e1..e9`, carrying `computed` to `reference`. Columns are only matched to
/// columns of the same kind. Row 0 is fixed.
pub fn match_reference_matrix(computed: &DegreeMatrix, reference: &DegreeMatrix) -> Result<MatrixMatch, GeneratorError> {
    let n = computed.cols();
    if n != reference.cols() || computed.rows.len() != reference.rows.len() || computed.basis != reference.basis {
        return Err(GeneratorError::Shape);
    }
    let nrows = computed.rows.len();
    let mut perm = vec![0usize];
    let mut used = vec![false; nrows];
    used[0] = true;
    if !partial_ok(computed, reference, &perm) {
        return Err(GeneratorError::NoMatch);
    }
    // identity first, then backtracking over the remaining rows
    if let Some(rows) = search_rows(computed, reference, &mut perm, &mut used) {
        let columns = match_columns(computed, reference, &rows).ok_or(GeneratorError::NoMatch)?;
        return Ok(MatrixMatch { rows, columns });
    }
    Err(GeneratorError::NoMatch)
}

fn search_rows(c: &DegreeMatrix, r: &DegreeMatrix, perm: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<usize>> {
    let k = perm.len();
    if k == c.rows.len() {
        return Some(perm.clone());
    }
    let order = std::iter::once(k).chain(0..used.len());
    let mut tried = vec![false; used.len()];
    for t in order {
        if used[t] || tried[t] {
            continue;
        }
        tried[t] = true;
        perm.push(t);
        used[t] = true;
        if partial_ok(c, r, perm) {
            if let Some(p) = search_rows(c, r, perm, used) {
                return Some(p);
            }
        }
        used[t] = false;
        perm.pop();
    }
    None
}

/// Multisets of (kind, projected column) agree on the rows assigned so far.
fn partial_ok(c: &DegreeMatrix, r: &DegreeMatrix, perm: &[usize]) -> bool {
    let key = |m: &DegreeMatrix, j: usize, rows: &mut dyn Iterator<Item = usize>| {
        (m.kinds[j], rows.map(|i| m.rows[i][j]).collect::<Vec<i64>>())
    };
    let mut count: BTreeMap<(ReferenceKindTag, Vec<i64>), i64> = BTreeMap::new();
    for j in 0..c.cols() {
        *count.entry(key(c, j, &mut (0..perm.len()))).or_default() += 1;
    }
    for j in 0..r.cols() {
        *count.entry(key(r, j, &mut perm.iter().copied())).or_default() -= 1;
    }
    count.values().all(|&v| v == 0)
}

fn match_columns(c: &DegreeMatrix, r: &DegreeMatrix, rows: &[usize]) -> Option<Vec<usize>> {
    let mut pool: BTreeMap<(ReferenceKindTag, Vec<i64>), Vec<usize>> = BTreeMap::new();
    for j in (0..r.cols()).rev() {
        pool.entry((r.kinds[j], r.column(j))).or_default().push(j);
    }
    (0..c.cols())
        .map(|j| {
            let col: Vec<i64> = (0..rows.len()).map(|i| c.rows[i][j]).collect();
            // computed row i is reference row rows[i]
            let mut target = vec![0; rows.len()];
            for (i, &ri) in rows.iter().enumerate() {
                target[ri] = col[i];
            }
            pool.get_mut(&(c.kinds[j], target))?.pop()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn x411_generators() {
        let c = Catalog::bundled().unwrap();
        let s = c.get("X_411").unwrap();
        let g = minimal_generators(s).unwrap();
        assert_eq!(g.len(), 15);
        // six generators whose degree is not an exceptional class
        assert_eq!(g.entries.iter().filter(|e| e.degree.0[0] != 0).count(), 6);
        let e = degree_matrix(&g, Basis::E).unwrap();
        let th1 = e.labels.iter().position(|l| l == "Th1.1").unwrap();
        assert_eq!(e.column(th1), vec![1, -1, -1, -1, 0, 0, 0, 0, 0, 0]);
        let gr = degree_matrix(&g, Basis::Graded).unwrap();
        for (k, &j) in g.exceptional.iter().enumerate() {
            let mut unit = vec![0; RANK];
            unit[k + 1] = 1;
            assert_eq!(gr.column(j), unit);
        }
        assert_eq!(gr.rows[0], e.rows[0]);
    }

    #[test]
    fn matcher_basics() {
        let c = Catalog::bundled().unwrap();
        let a = reference_matrix(c.get("X_411").unwrap());
        let m = match_reference_matrix(&a, &a).unwrap();
        assert_eq!(m.rows, (0..RANK).collect::<Vec<_>>());
        assert_eq!(m.columns, (0..a.cols()).collect::<Vec<_>>());
        let b = reference_matrix(c.get("X_141").unwrap());
        assert_eq!(match_reference_matrix(&a, &b), Err(GeneratorError::Shape));
    }

    #[test]
    fn matcher_undoes_row_swap() {
        let c = Catalog::bundled().unwrap();
        let a = reference_matrix(c.get("X_321").unwrap());
        let mut b = a.clone();
        b.rows.swap(2, 7);
        b.rows.swap(3, 5);
        let m = match_reference_matrix(&b, &a).unwrap();
        for (i, &ri) in m.rows.iter().enumerate() {
            for (j, &rj) in m.columns.iter().enumerate() {
                assert_eq!(b.rows[i][j], a.rows[ri][rj]);
            }
        }
    }
}
