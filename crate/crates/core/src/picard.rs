//! The Picard lattice `Z^{1,9}` of a rational elliptic surface.

use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const RANK: usize = 10;

/// A divisor class in the basis `e0, e1, ..., e9` where `e0` is the pullback
/// of a line and `e1..e9` are the exceptional classes of the blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass(pub [i64; RANK]);

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass([0; RANK]);

    pub fn from_slice(v: &[i64]) -> Option<Self> {
        let arr: [i64; RANK] = v.try_into().ok()?;
        Some(DivisorClass(arr))
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [0; RANK];
        c[i] = 1;
        DivisorClass(c)
    }

    /// `K = -3 e0 + e1 + ... + e9`.
    pub fn canonical() -> Self {
        let mut c = [1; RANK];
        c[0] = -3;
        DivisorClass(c)
    }

    /// The class of a fiber, `-K`.
    pub fn fiber() -> Self {
        -Self::canonical()
    }

    pub fn coords(&self) -> &[i64; RANK] {
        &self.0
    }

    pub fn dot(&self, other: &DivisorClass) -> i64 {
        self.0[0] * other.0[0] - (1..RANK).map(|i| self.0[i] * other.0[i]).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// `-K . D`
    pub fn anticanonical_degree(&self) -> i64 {
        Self::fiber().dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Largest `a` with `self = a * other`, if `self` is an integer multiple.
    pub fn multiple_of(&self, other: &DivisorClass) -> Option<i64> {
        let i = other.0.iter().position(|&x| x != 0)?;
        if self.0[i] % other.0[i] != 0 {
            return None;
        }
        let a = self.0[i] / other.0[i];
        (*other * a == *self).then_some(a)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        DivisorClass(c)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        self + (-o)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.map(|x| -x))
    }
}

impl Mul<i64> for DivisorClass {
    type Output = DivisorClass;
    fn mul(self, a: i64) -> DivisorClass {
        DivisorClass(self.0.map(|x| a * x))
    }
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> i64 {
    a.dot(b)
}

pub fn gram_matrix() -> Vec<Vec<i64>> {
    (0..RANK)
        .map(|i| (0..RANK).map(|j| DivisorClass::basis(i).dot(&DivisorClass::basis(j))).collect())
        .collect()
}

/// Euler characteristic `1 + (D^2 - D.K) / 2`.
pub fn riemann_roch_chi(d: &DivisorClass) -> i64 {
    1 + (d.square() - d.dot(&DivisorClass::canonical())) / 2
}

pub fn is_nef<'a>(d: &DivisorClass, curves: impl IntoIterator<Item = &'a DivisorClass>) -> bool {
    curves.into_iter().all(|c| d.dot(c) >= 0)
}

/// Which clause of Harbourne's description of nef classes applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HarbourneCase {
    /// `-K.D >= 2`: base point free, `h^1 = 0`.
    BasePointFree,
    /// `-K.D = 1`: `D ~ -aK + P` and `P` is in the base locus.
    SectionInBaseLocus { a: i64, section: Option<String> },
    /// `-K.D = 0`: `D ~ -aK` and `h^1 = a`.
    FiberMultiple { a: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Harbourne {
    pub h1: i64,
    pub case: HarbourneCase,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PicardError {
    #[error("class {0} is not nef")]
    NotNef(DivisorClass),
    #[error("class {0} has -K.D = 0 but is not a multiple of -K")]
    NotFiberMultiple(DivisorClass),
}

/// `h^1(X, D)` for a nef class `D`. `curves` is the full list of negative
/// curves as (label, class); sections are the curves of square `-1`.
pub fn harbourne_h1(d: &DivisorClass, curves: &[(String, DivisorClass)]) -> Result<Harbourne, PicardError> {
    if !is_nef(d, curves.iter().map(|c| &c.1)) {
        return Err(PicardError::NotNef(*d));
    }
    let k = d.anticanonical_degree();
    if k >= 2 {
        return Ok(Harbourne { h1: 0, case: HarbourneCase::BasePointFree });
    }
    if k == 1 {
        // D = -aK + P with P a section, a = D.P + 1
        let found = curves.iter().filter(|c| c.1.square() == -1).find_map(|(label, p)| {
            let rest = *d - *p;
            let a = rest.multiple_of(&DivisorClass::fiber()).or(rest.is_zero().then_some(0))?;
            Some((a, label.clone()))
        });
        let (a, section) = match found {
            Some((a, l)) => (a, Some(l)),
            None => (d.dot(&DivisorClass::fiber()), None),
        };
        return Ok(Harbourne { h1: 0, case: HarbourneCase::SectionInBaseLocus { a, section } });
    }
    let a = if d.is_zero() {
        0
    } else {
        d.multiple_of(&DivisorClass::fiber()).ok_or(PicardError::NotFiberMultiple(*d))?
    };
    Ok(Harbourne { h1: a, case: HarbourneCase::FiberMultiple { a } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;

    fn e(i: usize) -> DivisorClass {
        DivisorClass::basis(i)
    }

    #[test]
    fn pairing_basics() {
        assert_eq!(e(0).dot(&e(0)), 1);
        assert_eq!(e(3).dot(&e(3)), -1);
        assert_eq!(e(0).dot(&e(4)), 0);
        let k = DivisorClass::canonical();
        assert_eq!(k.square(), 0);
        let theta = e(0) - e(1) - e(2) - e(3);
        assert_eq!(theta.square(), -2);
        assert_eq!((-k).dot(&theta), 0);
    }

    #[test]
    fn unimodular() {
        assert_eq!(determinant(&gram_matrix()), -1);
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(riemann_roch_chi(&DivisorClass::ZERO), 1);
        assert_eq!(riemann_roch_chi(&DivisorClass::fiber()), 1);
        assert_eq!(riemann_roch_chi(&e(0)), 3);
        // conics through nothing
        assert_eq!(riemann_roch_chi(&(e(0) * 2)), 6);
    }

    #[test]
    fn harbourne_cases() {
        let curves = vec![("P0".to_string(), e(9)), ("C".to_string(), e(8) - e(9))];
        let f = DivisorClass::fiber();
        assert_eq!(harbourne_h1(&f, &curves).unwrap().h1, 1);
        assert_eq!(harbourne_h1(&(f * 2), &curves).unwrap().h1, 2);
        assert_eq!(harbourne_h1(&e(0), &curves).unwrap(), Harbourne { h1: 0, case: HarbourneCase::BasePointFree });
        let d = f + e(9);
        match harbourne_h1(&d, &curves).unwrap().case {
            HarbourneCase::SectionInBaseLocus { a, section } => {
                assert_eq!(a, 1);
                assert_eq!(section.as_deref(), Some("P0"));
            }
            c => panic!("unexpected {c:?}"),
        }
        assert!(harbourne_h1(&(e(8) - e(9)), &curves).is_err());
    }

    #[test]
    fn multiples() {
        let f = DivisorClass::fiber();
        assert_eq!((f * 3).multiple_of(&f), Some(3));
        assert_eq!(e(0).multiple_of(&f), None);
    }
}
