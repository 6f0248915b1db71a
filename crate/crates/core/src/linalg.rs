//! Small dense integer and rational linear algebra.

use coxsurf_algebra::{Field, Rational};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| (0..n).map(|j| (0..k).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Smith normal form `u * m * v = d` with `d` diagonal, nonnegative and
/// each entry dividing the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    /// Nontrivial invariant factors.
    pub fn torsion(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> Smith {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let r = rows.min(cols);
    let mut t = 0;
    while t < r {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for j in 0..cols {
                    a[i][j] -= q * a[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for i in 0..rows {
                    a[i][j] -= q * a[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= q * v[i][t];
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t
        let p = a[t][t];
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad {
            for j in 0..cols {
                a[t][j] += a[i][j];
            }
            for j in 0..rows {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if p < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let diagonal = (0..r).map(|i| a[i][i]).collect();
    Smith { u, v, diagonal, rows, cols }
}

/// Integer solution `x` of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    let s = smith_normal_form(m, cols);
    let ub = mat_vec(&s.u, b);
    let mut y = vec![0i64; cols];
    for (i, &c) in ub.iter().enumerate() {
        let d = s.diagonal.get(i).copied().unwrap_or(0);
        if d == 0 {
            if c != 0 {
                return None;
            }
        } else if c % d != 0 {
            return None;
        } else {
            y[i] = c / d;
        }
    }
    Some(mat_vec(&s.v, &y))
}

/// Whether `b` lies in the integer span of the given vectors.
pub fn in_integer_span(vectors: &[Vec<i64>], b: &[i64]) -> bool {
    if vectors.is_empty() {
        return b.iter().all(|&x| x == 0);
    }
    let m = transpose(&vectors.to_vec());
    solve_integer(&m, vectors.len(), b).is_some()
}

/// Unique solution of a square rational system, `None` when singular.
pub fn solve_rational(m: &IntMatrix, b: &[i64]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().map(|&x| Rational::from(x)).chain(std::iter::once(Rational::from(bi))).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let inv = a[k][k].inv().ok()?;
        for j in k..=n {
            a[k][j] = a[k][j].mul(&inv);
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let t = f.mul(&a[k][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Integer solution of a unimodular square system.
pub fn solve_unimodular(m: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    solve_rational(m, b)?.iter().map(|x| x.to_i64().filter(|_| x.is_integer())).collect()
}

pub fn rank(m: &IntMatrix, cols: usize) -> usize {
    smith_normal_form(m, cols).rank()
}

/// Primitive generator of the integer kernel of `m` when that kernel has
/// rank one.
pub fn kernel_rank_one(m: &IntMatrix, cols: usize) -> Option<Vec<i64>> {
    let s = smith_normal_form(m, cols);
    if cols - s.rank() != 1 {
        return None;
    }
    // the last column of v spans the kernel
    let k = s.rank();
    Some(s.v.iter().map(|row| row[k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntMatrix, cols: usize) -> Smith {
        let s = smith_normal_form(m, cols);
        let d = mat_mul(&mat_mul(&s.u, m), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = if i == j && i < s.diagonal.len() { s.diagonal[i] } else { 0 };
                assert_eq!(x, expect);
            }
        }
        assert_eq!(determinant(&s.u).abs(), 1);
        assert_eq!(determinant(&s.v).abs(), 1);
        for w in s.diagonal.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn smith_small() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = check_smith(&m, 3);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(check_smith(&m, 2).diagonal, vec![1, 6]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&identity(4)), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![2, 3], vec![4, 6]]), 0);
        assert_eq!(determinant(&vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]), 1);
    }

    #[test]
    fn spans() {
        let v = vec![vec![2, 0], vec![0, 3]];
        assert!(in_integer_span(&v, &[4, 9]));
        assert!(!in_integer_span(&v, &[1, 0]));
        assert_eq!(solve_integer(&vec![vec![1, 1], vec![1, -1]], 2, &[3, 1]), Some(vec![2, 1]));
        assert!(solve_integer(&vec![vec![1, 1], vec![1, -1]], 2, &[3, 0]).is_none());
    }

    #[test]
    fn kernel_line() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = kernel_rank_one(&m, 3).unwrap();
        assert_eq!(mat_vec(&m, &k), vec![0, 0]);
        assert!(k.iter().any(|&x| x != 0));
    }

    #[test]
    fn rational_solve() {
        let x = solve_rational(&vec![vec![2, 1], vec![1, 3]], &[1, 2]).unwrap();
        assert_eq!(x, vec![Rational::new(1, 5).unwrap(), Rational::new(3, 5).unwrap()]);
        assert!(solve_rational(&vec![vec![1, 2], vec![2, 4]], &[1, 2]).is_none());
    }
}
