//! Dynamical zeta functions of rational maps of the projective line over Q.
//!
//! For a map φ of degree d ≥ 2 and m ≥ 0,
//! `ζ_m(φ, t) = exp(Σ_n tⁿ/n Σ_{x ∈ Per_n} λ(φⁿ, x)^m)`.
//! The crate computes it two ways:
//!
//! * [`series::zeta_series`] sums multiplier powers over periodic points as
//!   exact traces in `Q[z]/(P_n)`, never leaving Q;
//! * [`cohomop::zeta_closed`] takes characteristic polynomials of the
//!   transfer operator `p ↦ Σ_{φ(z)=w} φ′(z)^{m-1} p(z)` acting on
//!   polynomials of degree at most `2m − 2`.
//!
//! Both paths agree when the relevant levels are transversal, and the test
//! suites check that they do. [`attractor`] adds a floating-point sufficient
//! test for transversality at every level.
//!
//! ```
//! use dynzeta::{cohomop, dynmap::RationalMap, exact::Poly};
//!
//! let phi = RationalMap::new(Poly::from_ints(&[0, 0, 1]), Poly::one()).unwrap();
//! let z1 = cohomop::zeta_closed(&phi, 1).unwrap();
//! assert_eq!(z1.numerator(), &Poly::from_ints(&[1, -2]));
//! assert_eq!(z1.denominator(), &Poly::from_ints(&[1, -4]));
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod attractor;
pub mod cohomop;
pub mod dynmap;
mod error;
pub mod exact;
pub mod series;
pub mod spectra;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
