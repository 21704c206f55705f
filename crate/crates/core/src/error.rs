use thiserror::Error;

use crate::staircase::Monomial;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generating set is empty")]
    Empty,

    #[error("ideal is not m-primary: no pure {missing}-power among the generators")]
    NotMPrimary { missing: char },

    #[error("ideal is not integrally closed")]
    NotComplete,

    #[error("ideal must be a proper m-primary ideal")]
    UnitIdeal,

    #[error("k = {k} is out of range: need 1 <= k < {upper}")]
    KOutOfRange { k: u32, upper: u32 },

    #[error("the module construction needs at least two generators")]
    TooFewGenerators,

    #[error("ideal is not oriented: a_0 = {a0} > b_r = {br}")]
    NotOriented { a0: u32, br: u32 },

    #[error("presentation must have at least one column and no empty column")]
    BadPresentation,

    #[error("2x2 minor of columns {0} and {1} is the binomial {2} - {3}")]
    NonMonomialMinor(usize, usize, Monomial, Monomial),

    #[error("quotient does not have finite length")]
    NotFiniteColength,

    #[error("Fitting ideal of M_k differs from the input ideal")]
    FittingMismatch,

    #[error("truncated computation unstable: {what} is {lo} at degree {n} but {hi} at degree {next}", next = .n + 1)]
    Unstable {
        what: &'static str,
        n: u32,
        lo: usize,
        hi: usize,
    },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
