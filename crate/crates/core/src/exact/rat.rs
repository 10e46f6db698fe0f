use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::modular;
use super::poly::Poly;
use crate::error::Error;

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// `numer / denom`.
    ///
    /// # Panics
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Integer power with the convention `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rat::one_value();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        // Scale down huge operands so the quotient stays representable.
        let n = self.numer();
        let d = self.denom();
        let shift = (n.bits().max(d.bits()) as i64 - 900).max(0) as usize;
        let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
        if df == 0.0 {
            // numerator dominated: magnitude too large for f64
            if n.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            nf / df
        }
    }

    /// Number of bits in numerator plus denominator; a rough height.
    pub fn height_bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn one_value() -> Self {
        Rat(BigRational::one())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"p"` or `"p/q"` with optional leading sign on `p`.
impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::ParseRational(String::from(s));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rat {
            fn from(v: $t) -> Self {
                Rat::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize, i128);

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat::from_integer(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat::one_value()
    }

    fn from_int(n: i64) -> Self {
        Rat::from(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        self.recip()
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn poly_mul(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        Scaled::from_poly(a).mul(&Scaled::from_poly(b)).into_poly()
    }

    fn poly_rem(a: &Poly<Self>, m: &Poly<Self>) -> Result<Poly<Self>, Error> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scaled::from_poly(a).rem(&Scaled::from_poly(m)).into_poly())
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        modular::gcd_certified(a, b)
    }

    fn poly_div_mod(num: &Poly<Self>, den: &Poly<Self>, modulus: &Poly<Self>) -> Result<Poly<Self>, Error> {
        modular::div_mod_certified(num, den, modulus)
    }
}

/// A polynomial over Q as integer coefficients over one common denominator.
///
/// Products and remainders run on the integer parts, so only the final
/// coefficients are reduced to lowest terms.
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn from_poly(p: &Poly<Rat>) -> Self {
        let den = p
            .coeffs()
            .iter()
            .filter(|c| !c.0.is_integer())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = if den.is_one() {
            p.coeffs().iter().map(|c| c.numer().clone()).collect()
        } else {
            p.coeffs()
                .iter()
                .map(|c| {
                    if c.denom() == &den {
                        c.numer().clone()
                    } else {
                        c.numer() * (&den / c.denom())
                    }
                })
                .collect()
        };
        Scaled { num, den }
    }

    fn into_poly(self) -> Poly<Rat> {
        let den = self.den;
        if den.is_one() {
            return Poly::new(self.num.into_iter().map(Rat::from_integer).collect());
        }
        Poly::new(self.num.into_iter().map(|n| Rat::new(n, den.clone())).collect())
    }

    fn mul(&self, rhs: &Scaled) -> Scaled {
        if self.num.is_empty() || rhs.num.is_empty() {
            return Scaled {
                num: Vec::new(),
                den: BigInt::one(),
            };
        }
        let mut out = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.num.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Scaled {
            num: out,
            den: &self.den * &rhs.den,
        }
    }

    /// Pseudo-division by the integer part of `m`, folding the scale factors
    /// into the denominator.
    fn rem(mut self, m: &Scaled) -> Scaled {
        let dm = m.num.len() - 1;
        if self.num.len() <= dm {
            return self;
        }
        let lc = &m.num[dm];
        for k in (0..self.num.len() - dm).rev() {
            let top = core::mem::take(&mut self.num[k + dm]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            let c = if r.is_zero() {
                q
            } else {
                for x in &mut self.num[..k + dm] {
                    *x *= lc;
                }
                self.den *= lc;
                top
            };
            for (x, y) in self.num[k..k + dm].iter_mut().zip(&m.num) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        self.num.truncate(dm);
        self
    }
}

impl Rat {
    pub fn signum_i32(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn cmp_zero(&self) -> Ordering {
        self.signum_i32().cmp(&0)
    }
}
