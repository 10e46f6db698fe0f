use core::fmt;

use super::poly::{self, Poly};
use crate::error::Error;

/// A field of characteristic zero with exact arithmetic.
///
/// The two polynomial hooks let a concrete field swap in a faster algorithm
/// than the Euclidean defaults (the rationals use certified modular methods).
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.mul_ref(&inv))
    }

    /// Product of two polynomials.
    fn poly_mul(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        poly::schoolbook_mul(a, b)
    }

    /// Remainder of `a` by a nonzero `m`.
    fn poly_rem(a: &Poly<Self>, m: &Poly<Self>) -> Result<Poly<Self>, Error>
    where
        Self: Sized,
    {
        a.div_rem(m).map(|(_, r)| r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        poly::euclid_gcd(a, b)
    }

    /// The residue `num * den^-1 mod modulus`, of degree below `deg modulus`.
    fn poly_div_mod(num: &Poly<Self>, den: &Poly<Self>, modulus: &Poly<Self>) -> Result<Poly<Self>, Error>
    where
        Self: Sized,
    {
        poly::euclid_div_mod(num, den, modulus)
    }
}
