//! Multiplier power sums `S_{n,m} = Σ_{x ∈ Per_n} λ^m` and trace sums
//! `T_m(φⁿ) = Σ_{x ∈ Fix φⁿ} λ^m / (1 − λ)`.
//!
//! Finite fixed points of `φⁿ = F_n/G_n` are the roots of `P_n = F_n − zG_n`.
//! At such a root `λ = 1 + P_n′/G_n`, so every sum over finite points is a
//! trace in `Q[z]/(P_n)`. When `φⁿ` fixes ∞ its multiplier is added
//! separately. Working in the chart of the input keeps `G_n = 1` for
//! polynomial maps and the coefficients small.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::dynmap::{Mobius, RationalMap};
use crate::error::Error;
use crate::exact::{Field, PolyQ, QuotAlg, Rat};

/// Multiplier data of one iterate `φⁿ`, certified transversal.
#[derive(Clone, Debug)]
pub struct LevelSpectrum {
    level: usize,
    count: usize,
    p: PolyQ,
    g: PolyQ,
    alg: QuotAlg<Rat>,
    h: PolyQ,
    infinity: Option<Rat>,
}

impl LevelSpectrum {
    /// `phi_n` must be the `level`-th iterate; fails with `NotTransversal`
    /// when some fixed point of it has multiplier 1.
    pub fn new(phi_n: &RationalMap, level: usize) -> Result<Self, Error> {
        let not_transversal = Error::NotTransversal { level };
        let p = phi_n.fixed_point_poly();
        let infinity = phi_n.multiplier_at_infinity();
        if infinity.as_ref().is_some_and(|l| l.is_one()) {
            return Err(not_transversal);
        }
        if p.degree().unwrap_or(0) == 0 || !p.is_squarefree()? {
            return Err(not_transversal);
        }
        let alg = QuotAlg::new(&p)?;
        let g = phi_n.denominator().clone();
        let dp = p.derivative();
        let slope = if g.is_one() {
            alg.reduce(&dp)
        } else {
            alg.div(&dp, &g).map_err(|_| Error::NotInvertible)?
        };
        let h = &slope + &PolyQ::one();
        let count = alg.dim() + usize::from(infinity.is_some());
        Ok(LevelSpectrum {
            level,
            count,
            p,
            g,
            alg,
            h,
            infinity,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `#Fix(φⁿ) = dⁿ + 1`.
    pub fn count(&self) -> usize {
        self.count
    }

    /// `P_n = F_n − zG_n`.
    pub fn fixed_point_poly(&self) -> &PolyQ {
        &self.p
    }

    /// The multiplier as an element of `Q[z]/(P_n)`.
    pub fn multiplier_element(&self) -> &PolyQ {
        &self.h
    }

    pub fn algebra(&self) -> &QuotAlg<Rat> {
        &self.alg
    }

    /// Multiplier at ∞ when ∞ is fixed.
    pub fn infinity_multiplier(&self) -> Option<&Rat> {
        self.infinity.as_ref()
    }

    /// `h⁰, h¹, ..., h^k` reduced modulo `P_n`.
    fn powers(&self, k: usize) -> Vec<PolyQ> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(PolyQ::one());
        for i in 1..=k {
            let next = self.alg.mul(&out[i - 1], &self.h);
            out.push(next);
        }
        out
    }

    /// `S_{n,m}` for `m = 0..=mmax`.
    pub fn power_sums(&self, mmax: usize) -> Vec<Rat> {
        self.powers(mmax)
            .iter()
            .enumerate()
            .map(|(m, hm)| {
                let mut s = self.alg.trace(hm);
                if let Some(l) = &self.infinity {
                    s += &l.pow(m as u32);
                }
                s
            })
            .collect()
    }

    /// `T_m(φⁿ)` for `m = 0..=mmax`.
    pub fn trace_sums(&self, mmax: usize) -> Result<Vec<Rat>, Error> {
        // (1 − h)⁻¹ = −G / P′ modulo P
        let u = self
            .alg
            .div(&-&self.g, &self.p.derivative())
            .map_err(|_| Error::NotTransversal { level: self.level })?;
        let inf_u = self
            .infinity
            .as_ref()
            .map(|l| (l.clone(), (&Rat::one() - l).recip().expect("λ∞ ≠ 1")));
        Ok(self
            .powers(mmax)
            .iter()
            .enumerate()
            .map(|(m, hm)| {
                let mut t = self.alg.trace(&self.alg.mul(hm, &u));
                if let Some((l, w)) = &inf_u {
                    t += &(&l.pow(m as u32) * w);
                }
                t
            })
            .collect())
    }

    pub fn power_sum(&self, m: usize) -> Rat {
        self.power_sums(m).pop().expect("nonempty")
    }

    pub fn trace_sum(&self, m: usize) -> Result<Rat, Error> {
        Ok(self.trace_sums(m)?.pop().expect("nonempty"))
    }
}

fn level_of(phi: &RationalMap, n: usize) -> Result<LevelSpectrum, Error> {
    phi.require_degree(2)?;
    LevelSpectrum::new(&phi.iterate(n)?, n)
}

/// `S_{n,m} = Σ_{x ∈ Per_n} λ(φⁿ, x)^m`, with `0⁰ = 1`.
pub fn multiplier_power_sum(phi: &RationalMap, n: usize, m: usize) -> Result<Rat, Error> {
    Ok(level_of(phi, n)?.power_sum(m))
}

/// `T_m(φⁿ) = Σ_{x ∈ Fix φⁿ} λ^m / (1 − λ)`.
pub fn trace_sum_t(phi: &RationalMap, n: usize, m: usize) -> Result<Rat, Error> {
    level_of(phi, n)?.trace_sum(m)
}

fn mobius_mu(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Number of points of minimal period `n`, `Σ_{e | n} μ(n/e) (dᵉ + 1)`.
pub fn count_minimal_periodic(phi: &RationalMap, n: usize) -> Result<u64, Error> {
    phi.require_degree(2)?;
    if n == 0 {
        return Err(Error::InvalidMap("period must be positive".into()));
    }
    let overflow = Error::Overflow("periodic point count");
    let mut total: i128 = 0;
    for e in (1..=n).filter(|e| n % e == 0) {
        LevelSpectrum::new(&phi.iterate(e)?, e)?;
        let mu = mobius_mu(n / e);
        if mu == 0 {
            continue;
        }
        let count = (phi.degree() as i128)
            .checked_pow(e as u32)
            .and_then(|x| x.checked_add(1))
            .ok_or(overflow.clone())?;
        total = total.checked_add(i128::from(mu) * count).ok_or(overflow.clone())?;
    }
    u64::try_from(total).map_err(|_| overflow)
}

/// Outcome of the squarefree test at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub level: usize,
    pub transversal: bool,
    /// `gcd(P_n, P_n′)` in the conjugated chart, for failing levels.
    pub witness: Option<PolyQ>,
    /// The same repeated points in the input's coordinates: a monic
    /// polynomial for the finite ones and a flag for ∞.
    pub witness_original: Option<(PolyQ, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    pub level_bound: usize,
    pub conjugation: Mobius,
    pub levels: Vec<LevelVerdict>,
}

impl TransversalityReport {
    pub fn all_transversal(&self) -> bool {
        self.levels.iter().all(|v| v.transversal)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|v| !v.transversal).map(|v| v.level)
    }
}

/// Pulls a polynomial in `u = 1/(z − c)` back to `z`.
fn pull_back_witness(w: &PolyQ, c: &Rat) -> (PolyQ, bool) {
    let k = w.degree().expect("nonzero witness");
    let at_infinity = w.coeff(0).is_zero();
    let reversed = w.reversed(k);
    let shift = PolyQ::new(alloc::vec![-c, Rat::one()]);
    let mut acc = PolyQ::zero();
    for coeff in reversed.coeffs().iter().rev() {
        acc = &(&acc * &shift) + &PolyQ::constant(coeff.clone());
    }
    (acc.monic(), at_infinity)
}

/// Squarefree test of the fixed-point polynomial of each iterate up to `n`,
/// in a chart where ∞ is not periodic up to that period.
pub fn check_transversal_levels(phi: &RationalMap, n: usize) -> Result<TransversalityReport, Error> {
    phi.require_degree(2)?;
    let theta = phi.choose_deperiodizing_conjugation(n)?;
    let psi = phi.conjugate(&theta)?;
    let c = -theta.entries()[3];
    let mut levels = Vec::with_capacity(n);
    for (i, psi_n) in psi.iterates(n)?.iter().enumerate() {
        let p = psi_n.fixed_point_poly();
        let g = p.gcd(&p.derivative());
        let transversal = g.degree() == Some(0);
        let (witness, witness_original) = if transversal {
            (None, None)
        } else {
            let original = pull_back_witness(&g, &c);
            (Some(g), Some(original))
        };
        levels.push(LevelVerdict {
            level: i + 1,
            transversal,
            witness,
            witness_original,
        });
    }
    Ok(TransversalityReport {
        level_bound: n,
        conjugation: theta,
        levels,
    })
}

/// Exact `S_{n,m}` for `m ≤ M` and `T_m(φⁿ)` for `m ≤ M + 1`, all `n ≤ N`.
#[derive(Clone, Debug)]
pub struct SpectrumTable {
    map: RationalMap,
    level_bound: usize,
    m_bound: usize,
    chart: Option<Mobius>,
    s: BTreeMap<(usize, usize), Rat>,
    t: BTreeMap<(usize, usize), Rat>,
}

impl SpectrumTable {
    /// Fails with `NotTransversal` at the first level that is not.
    pub fn build(phi: &RationalMap, level_bound: usize, m_bound: usize) -> Result<Self, Error> {
        Self::build_from(phi, phi, None, level_bound, m_bound)
    }

    /// Same sums computed for `θ ∘ φ ∘ θ⁻¹`; they are conjugation invariant.
    pub fn build_in_chart(
        phi: &RationalMap,
        theta: &Mobius,
        level_bound: usize,
        m_bound: usize,
    ) -> Result<Self, Error> {
        let psi = phi.conjugate(theta)?;
        Self::build_from(phi, &psi, Some(theta.clone()), level_bound, m_bound)
    }

    /// Computed in a chart where ∞ is not periodic up to `level_bound`.
    pub fn build_deperiodized(phi: &RationalMap, level_bound: usize, m_bound: usize) -> Result<Self, Error> {
        let theta = phi.choose_deperiodizing_conjugation(level_bound)?;
        Self::build_in_chart(phi, &theta, level_bound, m_bound)
    }

    fn build_from(
        phi: &RationalMap,
        chart_map: &RationalMap,
        chart: Option<Mobius>,
        level_bound: usize,
        m_bound: usize,
    ) -> Result<Self, Error> {
        phi.require_degree(2)?;
        let mut s = BTreeMap::new();
        let mut t = BTreeMap::new();
        let mut phi_n: Option<RationalMap> = None;
        for n in 1..=level_bound {
            let next = match &phi_n {
                None => chart_map.clone(),
                Some(prev) => chart_map.compose(prev)?,
            };
            let level = LevelSpectrum::new(&next, n)?;
            for (m, v) in level.power_sums(m_bound).into_iter().enumerate() {
                s.insert((n, m), v);
            }
            for (m, v) in level.trace_sums(m_bound + 1)?.into_iter().enumerate() {
                t.insert((n, m), v);
            }
            phi_n = Some(next);
        }
        Ok(SpectrumTable {
            map: phi.clone(),
            level_bound,
            m_bound,
            chart,
            s,
            t,
        })
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    pub fn level_bound(&self) -> usize {
        self.level_bound
    }

    pub fn m_bound(&self) -> usize {
        self.m_bound
    }

    /// The conjugation the sums were computed in, if any.
    pub fn chart(&self) -> Option<&Mobius> {
        self.chart.as_ref()
    }

    pub fn s(&self, n: usize, m: usize) -> Result<&Rat, Error> {
        self.s.get(&(n, m)).ok_or(Error::MissingEntry { n, m })
    }

    pub fn t(&self, n: usize, m: usize) -> Result<&Rat, Error> {
        self.t.get(&(n, m)).ok_or(Error::MissingEntry { n, m })
    }

    /// `((n, m), S_{n,m})` in lexicographic order.
    pub fn s_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.s.iter()
    }

    /// `((n, m), T_m(φⁿ))` in lexicographic order.
    pub fn t_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.t.iter()
    }
}
