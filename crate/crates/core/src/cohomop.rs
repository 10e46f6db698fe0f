//! The transfer operator `Φ_m p(w) = Σ_{φ(z) = w} φ′(z)^{m−1} p(z)` on
//! polynomials of degree at most `2m − 2`, and the closed forms
//! `Z_m = det(1 − tΦ_m)`, `ζ_m = Z_m / Z_{m+1}`.
//!
//! The sum over preimages of `w` is a trace in `Q(w)[z]/(F − wG)`.

use core::fmt;

use alloc::vec;

use crate::dynmap::RationalMap;
use crate::error::Error;
use crate::exact::{Field, FracQ, MatF, Poly, PolyQ, QuotAlg, Rat};

/// `Φ_m(φ)` in the basis `1, w, ..., w^{2m−2}`; column `j` is the image of `w^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransferMatrix {
    m: usize,
    entries: MatF<Rat>,
    map: RationalMap,
}

impl TransferMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &MatF<Rat> {
        &self.entries
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    /// `det(1 − tΦ_m)`.
    pub fn det_one_minus_t(&self) -> PolyQ {
        self.entries.charpoly_det()
    }
}

type PolyW = Poly<FracQ>;

fn lift(p: &PolyQ) -> PolyW {
    Poly::new(p.coeffs().iter().map(|c| FracQ::constant(c.clone())).collect())
}

/// `G⁻¹` modulo `F − wG`, as the linear polynomial `a w + b` in `w`.
///
/// With `aF + bG = 1` over Q, `G (a w + b) = a wG + bG ≡ aF + bG = 1`.
fn inverse_of_denominator(f: &PolyQ, g: &PolyQ) -> Result<PolyW, Error> {
    let b = if f.is_constant() {
        PolyQ::zero()
    } else {
        g.invert_mod(f)?
    };
    let a = (&PolyQ::one() - &(&b * g)).div_exact(f)?;
    let n = a.coeffs().len().max(b.coeffs().len());
    Ok(Poly::new(
        (0..n)
            .map(|k| FracQ::from_poly(PolyQ::new(vec![b.coeff(k), a.coeff(k)])))
            .collect(),
    ))
}

/// Fails with `NonPolynomialImage` if some image is not a polynomial in `w`
/// of degree at most `2m − 2`; that would mean an arithmetic fault.
pub fn transfer_matrix(phi: &RationalMap, m: usize) -> Result<TransferMatrix, Error> {
    phi.require_degree(2)?;
    if m == 0 {
        return Err(Error::InvalidMap("transfer operator needs m >= 1".into()));
    }
    let (f, g) = (phi.numerator(), phi.denominator());
    let n = 2 * m - 1;
    let modulus: PolyW = Poly::new(
        (0..=phi.degree())
            .map(|k| FracQ::from_poly(PolyQ::new(vec![f.coeff(k), -g.coeff(k)])))
            .collect(),
    );
    let alg = QuotAlg::new(&modulus)?;

    // weight φ′^{m−1} = N^{m−1} G^{−2(m−1)}
    let weight = if m == 1 {
        PolyW::one()
    } else {
        let e = (m - 1) as u32;
        let wronskian = alg.pow(&lift(&phi.wronskian()), e);
        if g.is_constant() {
            wronskian
        } else {
            let ginv = inverse_of_denominator(f, g)?;
            alg.mul(&wronskian, &alg.pow(&ginv, 2 * e))
        }
    };

    let mut entries = MatF::zeros(n);
    let mut column = weight;
    for j in 0..n {
        let image = alg.trace(&column);
        if !image.is_polynomial() || image.num().degree().is_some_and(|d| d >= n) {
            return Err(Error::NonPolynomialImage { max_degree: n - 1 });
        }
        for (i, c) in image.num().coeffs().iter().enumerate() {
            entries.set(i, j, c.clone());
        }
        column = alg.reduce(&column.shift(1));
    }
    Ok(TransferMatrix {
        m,
        entries,
        map: phi.clone(),
    })
}

/// A rational function of `t` with `num(0) = den(0) = 1` in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunctionT {
    num: PolyQ,
    den: PolyQ,
}

impl RationalFunctionT {
    /// Reduces `num/den`, scaled so the denominator has constant term 1.
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self, Error> {
        let c = den.coeff(0);
        if c.is_zero() {
            return Err(Error::DenominatorVanishesAtZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() || g.is_zero() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let inv = den.coeff(0).recip().expect("nonzero");
        Ok(RationalFunctionT {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn polynomial(p: PolyQ) -> Result<Self, Error> {
        Self::new(p, PolyQ::one())
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.den
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("constant terms stay nonzero")
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.num.coeff(0).is_zero() {
            return Err(Error::DenominatorVanishesAtZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

/// Writes `num / den` as polynomials in `t`.
impl fmt::Display for RationalFunctionT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = alloc::format!("{}", self.num).replace('z', "t");
        if self.den.is_one() {
            write!(f, "{num}")
        } else {
            let den = alloc::format!("{}", self.den).replace('z', "t");
            write!(f, "({num}) / ({den})")
        }
    }
}

/// `Z_m(φ, t)`: `det(1 − tΦ_m)` for `m ≥ 1` and `1/(1 − t)` for `m = 0`.
pub fn lzeta_closed(phi: &RationalMap, m: usize) -> Result<RationalFunctionT, Error> {
    phi.require_degree(2)?;
    if m == 0 {
        return RationalFunctionT::new(PolyQ::one(), PolyQ::from_ints(&[1, -1]));
    }
    RationalFunctionT::polynomial(transfer_matrix(phi, m)?.det_one_minus_t())
}

/// `ζ_m(φ, t) = Z_m / Z_{m+1}`; for `m = 0` this is `1/((1 − t)(1 − dt))`.
pub fn zeta_closed(phi: &RationalMap, m: usize) -> Result<RationalFunctionT, Error> {
    lzeta_closed(phi, m)?.div(&lzeta_closed(phi, m + 1)?)
}
