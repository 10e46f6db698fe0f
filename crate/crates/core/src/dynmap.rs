//! Rational self-maps of the projective line over Q.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exact::{Field, FracQ, PolyQ, Rat};

/// A point of P¹(Q).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ProjPoint {
    Finite(Rat),
    Infinity,
}

impl ProjPoint {
    pub fn finite(r: impl Into<Rat>) -> Self {
        ProjPoint::Finite(r.into())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(r) => write!(f, "{r}"),
            ProjPoint::Infinity => write!(f, "oo"),
        }
    }
}

/// `z ↦ (a z + b) / (c z + d)` with `ad − bc ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mobius {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl Mobius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self, Error> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius {
            a: Rat::one(),
            b: Rat::zero(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        Mobius {
            a: Rat::zero(),
            b: Rat::one(),
            c: Rat::one(),
            d: Rat::zero(),
        }
    }

    /// `z ↦ 1/(z − c)`, sending `c` to ∞ and ∞ to 0.
    pub fn inversion_at(c: Rat) -> Self {
        Mobius {
            a: Rat::zero(),
            b: Rat::one(),
            c: Rat::one(),
            d: -c,
        }
    }

    pub fn entries(&self) -> [&Rat; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        let (num, den) = match x {
            ProjPoint::Finite(z) => (&(&self.a * z) + &self.b, &(&self.c * z) + &self.d),
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
        };
        if den.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(&num / &den)
        }
    }

    pub fn inverse(&self) -> Self {
        Mobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Mobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn as_map(&self) -> RationalMap {
        RationalMap::new(
            PolyQ::new(vec![self.b.clone(), self.a.clone()]),
            PolyQ::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("invertible Möbius map has degree 1")
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}*z + {})/({}*z + {})", self.a, self.b, self.c, self.d)
    }
}

/// `φ = F/G` with `gcd(F, G) = 1`, `G` monic and degree `max(deg F, deg G) ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMap {
    f: PolyQ,
    g: PolyQ,
    degree: usize,
}

impl RationalMap {
    /// Reduces `F/G` to lowest terms with monic denominator.
    pub fn new(f: PolyQ, g: PolyQ) -> Result<Self, Error> {
        if g.is_zero() {
            return Err(Error::InvalidMap("denominator is zero".into()));
        }
        let gcd = f.gcd(&g);
        let (f, g) = if gcd.is_one() {
            (f, g)
        } else {
            (f.div_exact(&gcd)?, g.div_exact(&gcd)?)
        };
        let degree = f.degree_or_zero().max(g.degree_or_zero());
        if degree == 0 {
            return Err(Error::InvalidMap("map is constant".into()));
        }
        let inv = g.leading().expect("nonzero").inverse().expect("nonzero");
        Ok(RationalMap {
            f: f.scale(&inv),
            g: g.scale(&inv),
            degree,
        })
    }

    /// Polynomial map `F`.
    pub fn polynomial(f: PolyQ) -> Result<Self, Error> {
        Self::new(f, PolyQ::one())
    }

    /// `z^d`.
    pub fn power(d: usize) -> Self {
        Self::polynomial(PolyQ::monomial(Rat::one(), d)).expect("d >= 1")
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.f
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.is_one()
    }

    pub(crate) fn require_degree(&self, required: usize) -> Result<(), Error> {
        if self.degree < required {
            Err(Error::DegreeTooSmall {
                degree: self.degree,
                required,
            })
        } else {
            Ok(())
        }
    }

    pub fn eval(&self, x: &ProjPoint) -> ProjPoint {
        match x {
            ProjPoint::Finite(z) => {
                let gz = self.g.eval(z);
                if gz.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(&self.f.eval(z) / &gz)
                }
            }
            ProjPoint::Infinity => {
                let df = self.f.degree_or_zero();
                let dg = self.g.degree_or_zero();
                if self.f.is_zero() || df < dg {
                    ProjPoint::finite(0)
                } else if df > dg {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.f.leading().expect("nonzero") / self.g.leading().expect("nonzero"))
                }
            }
        }
    }

    /// `self ∘ inner`, computed homogeneously as `F(A, B) / G(A, B)` in
    /// degree `d` forms of `inner = A/B`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap, Error> {
        let d = self.degree;
        let (a, b) = (&inner.f, &inner.g);
        let mut a_pows = Vec::with_capacity(d + 1);
        let mut b_pows = Vec::with_capacity(d + 1);
        a_pows.push(PolyQ::one());
        b_pows.push(PolyQ::one());
        for i in 1..=d {
            a_pows.push(&a_pows[i - 1] * a);
            b_pows.push(&b_pows[i - 1] * b);
        }
        let form = |p: &PolyQ| {
            let mut acc = PolyQ::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&a_pows[i] * &b_pows[d - i]).scale(c);
                }
            }
            acc
        };
        let expected = d * inner.degree;
        let composed = RationalMap::new(form(&self.f), form(&self.g))?;
        if composed.degree != expected {
            return Err(Error::DegreeCollapse {
                expected,
                got: composed.degree,
            });
        }
        Ok(composed)
    }

    /// `φⁿ` for `n ≥ 1`.
    pub fn iterate(&self, n: usize) -> Result<RationalMap, Error> {
        if n == 0 {
            return Err(Error::InvalidMap("iterate count must be positive".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `[φ, φ², ..., φᴺ]`.
    pub fn iterates(&self, n: usize) -> Result<Vec<RationalMap>, Error> {
        let mut out: Vec<RationalMap> = Vec::with_capacity(n);
        for k in 0..n {
            let next = match k {
                0 => self.clone(),
                _ => self.compose(&out[k - 1])?,
            };
            out.push(next);
        }
        Ok(out)
    }

    /// `F′G − FG′`, the numerator of the derivative.
    pub fn wronskian(&self) -> PolyQ {
        &(&self.f.derivative() * &self.g) - &(&self.f * &self.g.derivative())
    }

    /// `φ′ = (F′G − FG′)/G²` in lowest terms.
    pub fn derivative(&self) -> FracQ {
        FracQ::new(self.wronskian(), &self.g * &self.g).expect("denominator is nonzero")
    }

    /// `θ ∘ φ ∘ θ⁻¹`.
    pub fn conjugate(&self, theta: &Mobius) -> Result<RationalMap, Error> {
        theta.as_map().compose(&self.compose(&theta.inverse().as_map())?)
    }

    /// `F − zG`; its roots are the finite fixed points.
    pub fn fixed_point_poly(&self) -> PolyQ {
        &self.f - &self.g.shift(1)
    }

    pub fn fixes_infinity(&self) -> bool {
        self.f.degree_or_zero() > self.g.degree_or_zero()
    }

    /// Multiplier at a fixed point; at ∞ it is read off in the chart `1/z`.
    pub fn multiplier(&self, x: &ProjPoint) -> Result<Rat, Error> {
        if &self.eval(x) != x {
            return Err(Error::NotFixed);
        }
        match x {
            ProjPoint::Finite(z) => {
                let gz = self.g.eval(z);
                Ok(&self.wronskian().eval(z) / &(&gz * &gz))
            }
            ProjPoint::Infinity => self.conjugate(&Mobius::inversion())?.multiplier(&ProjPoint::finite(0)),
        }
    }

    /// Multiplier at ∞ from leading coefficients; `None` when ∞ is not fixed.
    pub(crate) fn multiplier_at_infinity(&self) -> Option<Rat> {
        if !self.fixes_infinity() {
            return None;
        }
        // ψ(u) = 1/φ(1/u) = u^(dF−dG) G̃(u)/F̃(u); only dF − dG = 1 gives a nonzero slope.
        if self.f.degree_or_zero() == self.g.degree_or_zero() + 1 {
            Some(self.g.leading().expect("nonzero") / self.f.leading().expect("nonzero"))
        } else {
            Some(Rat::zero())
        }
    }

    /// A conjugation `θ(z) = 1/(z − c)` with `c` the first of `0, 1, −1, 2, −2, ...`
    /// that is not periodic of any period `≤ n`, so ∞ is not periodic for
    /// `θ ∘ φ ∘ θ⁻¹` up to that period.
    ///
    /// Fails only for Möbius maps of finite order, where every point is periodic.
    pub fn choose_deperiodizing_conjugation(&self, n: usize) -> Result<Mobius, Error> {
        // at most Σ (dᵏ + 1) points have period ≤ n unless some φᵏ is the identity
        let bound = (1..=n as u32).try_fold(1usize, |acc, k| {
            self.degree.checked_pow(k).and_then(|p| acc.checked_add(p + 1))
        });
        let bound = bound.unwrap_or(usize::MAX) as i64;
        for k in 0..bound.max(1) {
            let c = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
            let start = ProjPoint::finite(c);
            let mut x = start.clone();
            let periodic = (0..n).any(|_| {
                x = self.eval(&x);
                x == start
            });
            if !periodic {
                return Ok(Mobius::inversion_at(Rat::from(c)));
            }
        }
        Err(Error::InvalidMap("every point is periodic".into()))
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g.is_one() {
            write!(f, "{}", self.f)
        } else {
            write!(f, "({}) / ({})", self.f, self.g)
        }
    }
}
