use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and local-factor layers.
///
/// Exactness is load-bearing everywhere in this crate, so conditions that
/// would force an approximation (insufficient p-adic precision, a square
/// root that does not exist in the coefficient field, a truncation bound
/// below the proven threshold) are reported instead of being absorbed.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("root-of-unity order {old} does not divide {new}")]
    OrderMismatch { old: u64, new: u64 },

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("square root of {0} is not available (even residue characteristic)")]
    NoSquareRoot(u64),

    #[error("p-adic precision exhausted: needed {needed} digits, have {have}")]
    Precision { needed: i64, have: i64 },

    #[error("value is zero modulo p^{below} but its exactness is unknown")]
    ApproximateZero { below: i64 },

    #[error("nonzero input required for {0}")]
    ZeroInput(&'static str),

    #[error("{0} out of range: {1}")]
    OutOfRange(&'static str, i64),

    #[error("valuation {v} is not divisible by {d}")]
    NotInSubgroup { v: i64, d: u32 },

    #[error("truncation bound {got} below required minimum {min}")]
    BoundTooSmall { got: i64, min: i64 },

    #[error("unsupported test-function shape for the twisted transform: {0}")]
    UnsupportedSchwartz(&'static str),

    #[error("character is not in a canonical case for the closed formulas: {0}")]
    NonCanonicalCharacter(&'static str),

    #[error("matrix product is not a scalar multiple of the identity: {0}")]
    NotScalar(&'static str),

    #[error("independent routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
