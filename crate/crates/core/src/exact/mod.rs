//! Exact arithmetic: rationals, dense polynomials, fraction fields,
//! quotient algebras and small matrices.

mod field;
mod frac;
mod matrix;
pub(crate) mod modular;
mod poly;
mod quot;
mod rat;

pub use field::Field;
pub use frac::Frac;
pub use matrix::MatF;
pub use poly::{euclid_div_mod, euclid_gcd, schoolbook_mul, Poly};
pub use quot::QuotAlg;
pub use rat::Rat;

/// Polynomials over Q.
pub type PolyQ = Poly<Rat>;
/// Rational functions over Q.
pub type FracQ = Frac<Rat>;
