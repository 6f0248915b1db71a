//! Exact commutative algebra: coefficient fields, sparse multivariate
//! polynomials and Groebner bases.

pub mod field;
pub mod groebner;
pub mod poly;

pub use field::{ArithmeticError, Cyclotomic3, Field, Rational};
pub use groebner::{groebner_basis, normal_form, ring_map_kernel, saturate, Budget, GroebnerError, Ideal};
pub use poly::{Monomial, MonomialOrder, Poly, PolyError, PolyRing, RingRef};
