use alloc::string::String;

/// Errors raised by the exact and numerical routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cannot parse rational number `{0}`")]
    ParseRational(String),
    #[error("level {level} is not transversal: a periodic point has multiplier 1")]
    NotTransversal { level: usize },
    #[error("element is not invertible modulo the given polynomial")]
    NotInvertible,
    #[error("degree collapse: expected degree {expected}, got {got}")]
    DegreeCollapse { expected: usize, got: usize },
    #[error("point is not fixed by the map")]
    NotFixed,
    #[error("transfer operator image is not a polynomial of degree at most {max_degree}")]
    NonPolynomialImage { max_degree: usize },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("denominator vanishes at t = 0")]
    DenominatorVanishesAtZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("map has degree {degree}, need at least {required}")]
    DegreeTooSmall { degree: usize, required: usize },
    #[error("Möbius transformation is singular")]
    SingularMobius,
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("spectrum table lacks entry n = {n}, m = {m}")]
    MissingEntry { n: usize, m: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for failures that indicate a broken internal invariant rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::DegreeCollapse { .. } | Error::NonPolynomialImage { .. } | Error::InexactDivision
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ParseRational(_) => "ParseRational",
            Error::NotTransversal { .. } => "NotTransversal",
            Error::NotInvertible => "NotInvertible",
            Error::DegreeCollapse { .. } => "DegreeCollapse",
            Error::NotFixed => "NotFixed",
            Error::NonPolynomialImage { .. } => "NonPolynomialImage",
            Error::NonzeroConstantTerm => "NonzeroConstantTerm",
            Error::DenominatorVanishesAtZero => "DenominatorVanishesAtZero",
            Error::DivisionByZero => "DivisionByZero",
            Error::InexactDivision => "InexactDivision",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InvalidMap(_) => "InvalidMap",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::SingularMobius => "SingularMobius",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::MissingEntry { .. } => "MissingEntry",
            Error::Overflow(_) => "Overflow",
        }
    }
}
