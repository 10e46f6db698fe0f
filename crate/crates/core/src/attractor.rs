//! Floating-point search for attracting cycles through critical orbits.
//!
//! Every attracting cycle attracts a critical point, and a map of degree `d`
//! has `2d − 2` critical points counted with multiplicity. Finding `2d − 2`
//! distinct attracting cycles therefore accounts for all critical points, so
//! no periodic point of any period can have multiplier 1. The search runs in
//! double precision with fixed tolerances and is a heuristic: a granted
//! certificate is evidence, not proof.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::dynmap::RationalMap;
use crate::error::Error;
use crate::exact::{Field, PolyQ};

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttractorOptions {
    /// Near-return threshold in the chordal metric; also the root finder's.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub max_period: usize,
    /// A cycle counts as attracting when `|λ| < 1 − margin`.
    pub margin: f64,
}

impl Default for AttractorOptions {
    fn default() -> Self {
        AttractorOptions {
            tolerance: 1e-10,
            max_iterations: 10_000,
            max_period: 64,
            margin: 1e-6,
        }
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// Homogeneous coordinates `(x, y)` with `z = x/y`, of unit norm.
    fn homogeneous(self) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let (x, y) = match self {
            SpherePoint::Finite(z) if z.norm() > 1.0 => (one, z.inv()),
            SpherePoint::Finite(z) => (z, one),
            SpherePoint::Infinity => (one, Complex64::new(0.0, 0.0)),
        };
        let n = Float::sqrt(x.norm_sqr() + y.norm_sqr());
        (x / n, y / n)
    }

    /// Chordal distance, at most 1.
    pub fn chordal(self, other: SpherePoint) -> f64 {
        let (a, b) = self.homogeneous();
        let (c, d) = other.homogeneous();
        (a * d - b * c).norm()
    }
}

/// A point in whichever affine chart keeps its coordinate in the unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Chart {
    /// coordinate `z`
    Normal(Complex64),
    /// coordinate `u = 1/z`
    Inverted(Complex64),
}

impl Chart {
    fn from_ratio(a: Complex64, b: Complex64) -> Chart {
        if a.norm_sqr() <= b.norm_sqr() {
            Chart::Normal(a / b)
        } else {
            Chart::Inverted(b / a)
        }
    }

    fn from_point(p: SpherePoint) -> Chart {
        match p {
            SpherePoint::Infinity => Chart::Inverted(Complex64::new(0.0, 0.0)),
            SpherePoint::Finite(z) => Chart::from_ratio(z, Complex64::new(1.0, 0.0)),
        }
    }

    fn point(self) -> SpherePoint {
        match self {
            Chart::Normal(z) => SpherePoint::Finite(z),
            Chart::Inverted(u) if u == Complex64::new(0.0, 0.0) => SpherePoint::Infinity,
            Chart::Inverted(u) => SpherePoint::Finite(u.inv()),
        }
    }
}

/// `F`, `G` and their reversals `u^d F(1/u)`, `u^d G(1/u)` as complex
/// coefficient vectors.
struct NumericMap {
    f: Vec<Complex64>,
    g: Vec<Complex64>,
    fr: Vec<Complex64>,
    gr: Vec<Complex64>,
}

fn to_complex(p: &PolyQ) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect()
}

/// `(p(x), p′(x))` by Horner.
fn horner(p: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

impl NumericMap {
    fn new(phi: &RationalMap) -> Self {
        let d = phi.degree();
        NumericMap {
            f: to_complex(phi.numerator()),
            g: to_complex(phi.denominator()),
            fr: to_complex(&phi.numerator().reversed(d)),
            gr: to_complex(&phi.denominator().reversed(d)),
        }
    }

    /// Numerator and denominator values with derivatives in the given chart.
    fn values(&self, x: Chart) -> ((Complex64, Complex64), (Complex64, Complex64)) {
        match x {
            Chart::Normal(z) => (horner(&self.f, z), horner(&self.g, z)),
            Chart::Inverted(u) => (horner(&self.fr, u), horner(&self.gr, u)),
        }
    }

    fn step(&self, x: Chart) -> Chart {
        let ((a, _), (b, _)) = self.values(x);
        Chart::from_ratio(a, b)
    }

    /// Derivative of the map from the chart of `x` to the chart of its image.
    fn chart_derivative(&self, x: Chart) -> Complex64 {
        let ((a, da), (b, db)) = self.values(x);
        match Chart::from_ratio(a, b) {
            Chart::Normal(_) => (da * b - a * db) / (b * b),
            Chart::Inverted(_) => (db * a - b * da) / (a * a),
        }
    }
}

/// Critical points: finite roots of the Wronskian with multiplicity, plus
/// the ramification at ∞.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoints {
    pub finite: Vec<Complex64>,
    pub infinity_multiplicity: usize,
}

impl CriticalPoints {
    /// `2d − 2` for every map of degree `d`.
    pub fn total(&self) -> usize {
        self.finite.len() + self.infinity_multiplicity
    }
}

/// Simultaneous Weierstrass (Durand–Kerner) iteration for all roots.
fn durand_kerner(coeffs: &[Complex64], tolerance: f64, max_iterations: usize) -> Result<Vec<Complex64>, Error> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..max_iterations {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (v, _) = horner(&monic, roots[i]);
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(tolerance, tolerance);
                worst = f64::INFINITY;
                continue;
            }
            let delta = v / denom;
            roots[i] -= delta;
            worst = worst.max(delta.norm() / (1.0 + roots[i].norm()));
        }
        if worst < tolerance {
            return Ok(roots);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iterations,
    })
}

/// Roots of `N = F′G − FG′`; `∞` is critical with multiplicity `2d − 2 − deg N`.
pub fn critical_points_numeric(phi: &RationalMap, tolerance: f64) -> Result<CriticalPoints, Error> {
    phi.require_degree(2)?;
    let w = phi.wronskian();
    let deg = w.degree().expect("nonconstant map has nonzero Wronskian");
    let finite = if deg == 0 {
        Vec::new()
    } else if w.coeffs().iter().take(deg).all(|c| c.is_zero()) {
        vec![Complex64::new(0.0, 0.0); deg]
    } else {
        // a large cap: repeated roots converge only linearly
        durand_kerner(&to_complex(&w), tolerance, 100_000)?
    };
    Ok(CriticalPoints {
        finite,
        infinity_multiplicity: 2 * phi.degree() - 2 - deg,
    })
}

/// A detected periodic cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleInfo {
    pub period: usize,
    pub points: Vec<SpherePoint>,
    pub multiplier: Complex64,
    pub attracting: bool,
}

impl CycleInfo {
    pub fn contains_infinity(&self) -> bool {
        self.points.iter().any(|p| matches!(p, SpherePoint::Infinity))
    }

    fn same_cycle(&self, other: &CycleInfo, eps: f64) -> bool {
        self.period == other.period && other.points.iter().any(|q| q.chordal(self.points[0]) < eps)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrbitOutcome {
    Cycle(CycleInfo),
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalOrbit {
    pub point: SpherePoint,
    pub multiplicity: usize,
    pub outcome: OrbitOutcome,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalOrbitReport {
    pub options: AttractorOptions,
    pub degree: usize,
    pub orbits: Vec<CriticalOrbit>,
    /// Pairwise distinct cycles with `|λ| < 1 − margin`.
    pub attracting_cycles: Vec<CycleInfo>,
    pub certificate: bool,
}

impl CriticalOrbitReport {
    pub fn required_cycles(&self) -> usize {
        2 * self.degree - 2
    }
}

const POLISH_STEPS: usize = 2_000;
const DISTINCT_EPS: f64 = 1e-6;

fn follow_orbit(map: &NumericMap, start: SpherePoint, opts: &AttractorOptions) -> OrbitOutcome {
    let mut history: Vec<SpherePoint> = Vec::with_capacity(opts.max_iterations + 1);
    let mut x = Chart::from_point(start);
    history.push(x.point());
    for _ in 0..opts.max_iterations {
        x = map.step(x);
        let p = x.point();
        let k = history.len();
        let found = (1..=opts.max_period.min(k)).find(|&per| history[k - per].chordal(p) < opts.tolerance);
        history.push(p);
        if let Some(period) = found {
            return OrbitOutcome::Cycle(polish_cycle(map, x, period, opts));
        }
    }
    OrbitOutcome::Undecided
}

/// Iterates a while longer on the cycle, then multiplies chart derivatives
/// once around it.
fn polish_cycle(map: &NumericMap, mut x: Chart, period: usize, opts: &AttractorOptions) -> CycleInfo {
    let rounds = POLISH_STEPS / period;
    for _ in 0..rounds * period {
        let next = map.step(x);
        if !next.point().chordal(x.point()).is_finite() {
            break;
        }
        x = next;
    }
    let mut points = Vec::with_capacity(period);
    let mut multiplier = Complex64::new(1.0, 0.0);
    for _ in 0..period {
        points.push(x.point());
        multiplier *= map.chart_derivative(x);
        x = map.step(x);
    }
    CycleInfo {
        period,
        points,
        multiplier,
        attracting: multiplier.norm() < 1.0 - opts.margin,
    }
}

/// Follows every distinct critical point and grants the certificate when
/// `2d − 2` distinct attracting cycles turn up.
pub fn certify_attracting(phi: &RationalMap, opts: &AttractorOptions) -> Result<CriticalOrbitReport, Error> {
    let crit = critical_points_numeric(phi, opts.tolerance)?;
    let mut starts: Vec<(SpherePoint, usize)> = Vec::new();
    for z in crit.finite.iter().map(|&z| SpherePoint::Finite(z)) {
        match starts.iter_mut().find(|(p, _)| p.chordal(z) < DISTINCT_EPS) {
            Some((_, mult)) => *mult += 1,
            None => starts.push((z, 1)),
        }
    }
    if crit.infinity_multiplicity > 0 {
        starts.push((SpherePoint::Infinity, crit.infinity_multiplicity));
    }
    let map = NumericMap::new(phi);
    let mut orbits = Vec::with_capacity(starts.len());
    let mut attracting_cycles: Vec<CycleInfo> = Vec::new();
    for (point, multiplicity) in starts {
        let outcome = follow_orbit(&map, point, opts);
        if let OrbitOutcome::Cycle(c) = &outcome {
            if c.attracting && !attracting_cycles.iter().any(|a| a.same_cycle(c, DISTINCT_EPS)) {
                attracting_cycles.push(c.clone());
            }
        }
        orbits.push(CriticalOrbit {
            point,
            multiplicity,
            outcome,
        });
    }
    let certificate = attracting_cycles.len() == 2 * phi.degree() - 2;
    Ok(CriticalOrbitReport {
        options: *opts,
        degree: phi.degree(),
        orbits,
        attracting_cycles,
        certificate,
    })
}
