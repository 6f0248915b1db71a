//! Exact coefficient fields: the rationals and the cyclotomic field Q(e) with
//! e^2 + e + 1 = 0.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// Operations the polynomial and Groebner layers need from a coefficient
/// field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short tag used in diagnostics and by the parser.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithmeticError>;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn div(&self, other: &Self) -> Result<Self, ArithmeticError> {
        Ok(self.mul(&other.inv()?))
    }

    /// The primitive cube root of unity, if the field contains one.
    fn epsilon() -> Option<Self> {
        None
    }

    /// True when printing needs parentheses around the element as a factor.
    fn is_compound(&self) -> bool {
        false
    }

    /// True for a negative rational (used by the printer for `- c*m`).
    fn is_negative(&self) -> bool {
        false
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Field::add(self, other);
    }
}

#[derive(Clone)]
enum Repr {
    /// Numerator and positive denominator, coprime.
    Small(i64, i64),
    /// Only used when the value does not fit the small form.
    Big(BigRational),
}

/// Arbitrary precision rational number with an `i64` fast path.
#[derive(Clone)]
pub struct Rational(Repr);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, ArithmeticError> {
        if den == 0 {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(q: BigRational) -> Self {
        if let (Some(a), Some(b)) = (q.numer().to_i64(), q.denom().to_i64()) {
            return Rational(Repr::Small(a, b));
        }
        Rational(Repr::Big(q))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Repr::Big(q) => q.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(a, _) => BigInt::from(*a),
            Repr::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, b) => BigInt::from(*b),
            Repr::Big(q) => q.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => *b == 1,
            Repr::Big(q) => q.is_integer(),
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(a, 1) => Some(*a),
            _ => None,
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(a, _) => a.signum() as i32,
            Repr::Big(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            Field::neg(self)
        } else {
            self.clone()
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational::from_big(q)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(p), Repr::Big(q)) => p == q,
            // canonical forms never mix for equal values
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Repr::Big(q) => {
                1u8.hash(state);
                q.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(a, 1) => write!(f, "{}", a),
            Repr::Small(a, b) => write!(f, "{}/{}", a, b),
            Repr::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithmeticError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Field for Rational {
    const NAME: &'static str = "QQ";

    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational(Repr::Small(s, 1)),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Field::add(self, &Field::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rational(Repr::Small(p, 1)),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let g1 = a.gcd(d).max(1);
                let g2 = c.gcd(b).max(1);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let m = (*b / g2) as i128 * (*d / g1) as i128;
                Rational::from_i128(n, m)
            }
            _ => Rational::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) => match a.checked_neg() {
                Some(n) => Rational(Repr::Small(n, *b)),
                None => Rational::from_i128(-(*a as i128), *b as i128),
            },
            Repr::Big(q) => Rational::from_big(-q.clone()),
        }
    }

    fn inv(&self) -> Result<Self, ArithmeticError> {
        if Field::is_zero(self) {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small(a, b) => Rational::from_i128(*b as i128, *a as i128),
            Repr::Big(q) => Rational::from_big(q.recip()),
        })
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_negative(&self) -> bool {
        self.signum() < 0
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident, $f:expr) => {
        impl std::ops::$tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $f(&self, &rhs)
            }
        }
        impl<'a> std::ops::$tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $f(self, rhs)
            }
        }
    };
}

rational_binop!(Add, add, <Rational as Field>::add);
rational_binop!(Sub, sub, <Rational as Field>::sub);
rational_binop!(Mul, mul, <Rational as Field>::mul);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Field::neg(&self)
    }
}

/// Element `a + b*e` of Q(e), where e is a primitive cube root of unity,
/// reduced with e^2 = -e - 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic3 {
    pub a: Rational,
    pub b: Rational,
}

impl Cyclotomic3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Cyclotomic3 { a, b }
    }

    /// The generator e.
    pub fn e() -> Self {
        Cyclotomic3::new(Rational::zero(), Rational::one())
    }

    /// Norm a^2 - ab + b^2 down to Q.
    pub fn norm(&self) -> Rational {
        let aa = self.a.mul(&self.a);
        let ab = self.a.mul(&self.b);
        let bb = self.b.mul(&self.b);
        aa.sub(&ab).add(&bb)
    }

    /// Galois conjugate, sending e to e^2.
    pub fn conj(&self) -> Self {
        Cyclotomic3::new(self.a.sub(&self.b), Field::neg(&self.b))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Debug for Cyclotomic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            "e".to_string()
        } else if Field::neg(&self.b).is_one() {
            "-e".to_string()
        } else {
            format!("{}*e", self.b)
        };
        if self.a.is_zero() {
            return write!(f, "{}", b);
        }
        match b.strip_prefix('-') {
            Some(rest) => write!(f, "{} - {}", self.a, rest),
            None => write!(f, "{} + {}", self.a, b),
        }
    }
}

impl FromStr for Cyclotomic3 {
    type Err = ArithmeticError;

    /// Accepts the printed forms `a`, `b*e`, `a + b*e`, `a - e` and also `1e`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithmeticError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        // split into signed summands
        let mut parts = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('/') {
                parts.push(&compact[start..i]);
                start = i;
            }
        }
        parts.push(&compact[start..]);
        for part in parts {
            let (sign, body) = match part.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, part.strip_prefix('+').unwrap_or(part)),
            };
            if let Some(coef) = body.strip_suffix('e') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c: Rational = if coef.is_empty() { Rational::one() } else { coef.parse().map_err(|_| bad())? };
                b = b.add(&if sign < 0 { Field::neg(&c) } else { c });
            } else {
                let c: Rational = body.parse().map_err(|_| bad())?;
                a = a.add(&if sign < 0 { Field::neg(&c) } else { c });
            }
        }
        Ok(Cyclotomic3::new(a, b))
    }
}

impl Field for Cyclotomic3 {
    const NAME: &'static str = "QQ(e)";

    fn zero() -> Self {
        Cyclotomic3::new(Rational::zero(), Rational::zero())
    }

    fn one() -> Self {
        Cyclotomic3::new(Rational::one(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        Cyclotomic3::new(self.a.add(&other.a), self.b.add(&other.b))
    }

    fn sub(&self, other: &Self) -> Self {
        Cyclotomic3::new(self.a.sub(&other.a), self.b.sub(&other.b))
    }

    fn mul(&self, other: &Self) -> Self {
        // (a + b e)(c + d e) = ac - bd + (ad + bc - bd) e
        let ac = self.a.mul(&other.a);
        let bd = self.b.mul(&other.b);
        let ad = self.a.mul(&other.b);
        let bc = self.b.mul(&other.a);
        Cyclotomic3::new(ac.sub(&bd), ad.add(&bc).sub(&bd))
    }

    fn neg(&self) -> Self {
        Cyclotomic3::new(Field::neg(&self.a), Field::neg(&self.b))
    }

    fn inv(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        let n = self.norm().inv()?;
        let c = self.conj();
        Ok(Cyclotomic3::new(c.a.mul(&n), c.b.mul(&n)))
    }

    fn from_rational(q: &Rational) -> Self {
        Cyclotomic3::new(q.clone(), Rational::zero())
    }

    fn epsilon() -> Option<Self> {
        Some(Cyclotomic3::e())
    }

    fn is_compound(&self) -> bool {
        !self.a.is_zero() && !self.b.is_zero()
    }

    fn is_negative(&self) -> bool {
        self.b.is_zero() && self.a.signum() < 0
    }
}
