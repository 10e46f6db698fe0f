//! Truncated power series in `t` over Q, and the series side of the zeta
//! comparison.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use crate::cohomop::{zeta_closed, RationalFunctionT};
use crate::dynmap::RationalMap;
use crate::error::Error;
use crate::exact::{Field, Rat};
use crate::spectra::SpectrumTable;

/// `a_0 + a_1 t + ... + a_N t^N`, known modulo `t^{N+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesQ {
    coeffs: Vec<Rat>,
}

impl SeriesQ {
    /// Truncation order is `coeffs.len() − 1`; an empty vector means order 0.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        SeriesQ { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        SeriesQ {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesQ {
            coeffs: self.coeffs.iter().take(order + 1).cloned().collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        SeriesQ {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        SeriesQ {
            coeffs: (0..=n)
                .map(|k| (0..=k).fold(Rat::zero(), |acc, i| acc + &self.coeffs[i] * &rhs.coeffs[k - i]))
                .collect(),
        }
    }

    /// Quotient by a series with nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        let inv0 = rhs.coeffs[0].recip().ok_or(Error::DenominatorVanishesAtZero)?;
        let n = self.order().min(rhs.order());
        let mut out: Vec<Rat> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.coeffs[k].clone();
            for i in 1..=k {
                c -= &(&rhs.coeffs[i] * &out[k - i]);
            }
            out.push(&c * &inv0);
        }
        Ok(SeriesQ { coeffs: out })
    }
}

impl fmt::Debug for SeriesQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesQ{:?}", self.coeffs)
    }
}

/// `exp(a)` for `a(0) = 0`, from `n b_n = Σ_{k=1}^{n} k a_k b_{n−k}`.
pub fn series_exp(a: &SeriesQ) -> Result<SeriesQ, Error> {
    if !a.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = a.order();
    let ka: Vec<Rat> = a.coeffs.iter().enumerate().map(|(k, c)| c * &Rat::from(k)).collect();
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for i in 1..=n {
        let mut s = Rat::zero();
        for k in 1..=i {
            if !ka[k].is_zero() {
                s += &(&ka[k] * &b[i - k]);
            }
        }
        b.push(s / Rat::from(i));
    }
    Ok(SeriesQ { coeffs: b })
}

/// `exp(Σ_{n=1}^{N} c(n) tⁿ / n)`.
fn exp_of_weighted(order: usize, mut c: impl FnMut(usize) -> Result<Rat, Error>) -> Result<SeriesQ, Error> {
    let mut a = vec![Rat::zero(); order + 1];
    for (n, slot) in a.iter_mut().enumerate().skip(1) {
        *slot = c(n)? / Rat::from(n);
    }
    series_exp(&SeriesQ { coeffs: a })
}

/// `ζ_m` from its definition, `exp(Σ S_{n,m} tⁿ/n)`.
pub fn zeta_series(table: &SpectrumTable, m: usize, order: usize) -> Result<SeriesQ, Error> {
    exp_of_weighted(order, |n| table.s(n, m).cloned())
}

/// `Z_m = exp(Σ T_m(φⁿ) tⁿ/n)`.
pub fn lzeta_series(table: &SpectrumTable, m: usize, order: usize) -> Result<SeriesQ, Error> {
    exp_of_weighted(order, |n| table.t(n, m).cloned())
}

/// Taylor coefficients of `num/den` at `t = 0` up to `t^order`.
pub fn expand_closed(r: &RationalFunctionT, order: usize) -> Result<SeriesQ, Error> {
    let pad = |p: &crate::exact::PolyQ| SeriesQ {
        coeffs: (0..=order).map(|k| p.coeff(k)).collect(),
    };
    pad(r.numerator()).div(&pad(r.denominator()))
}

/// Result of comparing the two sides of the zeta identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub m: usize,
    pub order: usize,
    pub series: SeriesQ,
    pub closed: RationalFunctionT,
    pub expanded: SeriesQ,
    /// First index where the coefficients differ, with (series, closed) values.
    pub first_mismatch: Option<(usize, Rat, Rat)>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares a series built from `table` with the expansion of the closed form.
pub fn crosscheck_with_table(table: &SpectrumTable, m: usize, order: usize) -> Result<CrosscheckReport, Error> {
    let series = zeta_series(table, m, order)?;
    let closed = zeta_closed(table.map(), m)?;
    let expanded = expand_closed(&closed, order)?;
    let first_mismatch = (0..=order)
        .find(|&k| series.coeff(k) != expanded.coeff(k))
        .map(|k| (k, series.coeff(k).clone(), expanded.coeff(k).clone()));
    Ok(CrosscheckReport {
        m,
        order,
        series,
        closed,
        expanded,
        first_mismatch,
    })
}

/// Builds the spectrum table up to level `order` and compares.
pub fn crosscheck(phi: &RationalMap, m: usize, order: usize) -> Result<CrosscheckReport, Error> {
    let table = SpectrumTable::build(phi, order, m)?;
    crosscheck_with_table(&table, m, order)
}
