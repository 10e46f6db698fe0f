use core::fmt;

use super::field::Field;
use super::poly::Poly;

/// Element of the fraction field `F(w)`: a reduced quotient with monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> Frac<F> {
    /// Reduces `num / den`; `None` if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Option<Self> {
        let lc = den.leading()?.clone();
        if num.is_zero() {
            return Some(Self::zero());
        }
        if den.is_constant() {
            let inv = lc.inverse().expect("nonzero");
            return Some(Frac {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let inv = den.leading().expect("nonzero").inverse().expect("nonzero");
        Some(Frac {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `w`.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn into_parts(self) -> (Poly<F>, Poly<F>) {
        (self.num, self.den)
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div_ref(&self.den.eval(x))
    }
}

impl<F: Field> Field for Frac<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        Self::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero")
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }

    fn neg_ref(&self) -> Self {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<F: Field> fmt::Display for Frac<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for Frac<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac[{self}]")
    }
}
