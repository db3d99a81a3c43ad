//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong at the library level.
///
/// The arithmetic itself is exact, so there are no rounding errors; failures
/// are either domain violations (inverting zero, mixing fields) or a request
/// for data the stated precision of a series does not determine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("operands belong to different field specifications")]
    FieldMismatch,

    #[error("modulus {modulus_bits:#b} is not irreducible over F_2")]
    NotIrreducible { modulus_bits: u64 },

    #[error("invalid field configuration: {0}")]
    InvalidField(String),

    #[error("the given elements do not form an F_2-basis of the field")]
    NotABasis,

    #[error("cannot invert a series that is zero to its stated precision")]
    ZeroInversion,

    #[error("insufficient precision: coefficient data up to exponent {needed} required, series only known up to O(t^{have})")]
    InsufficientPrecision { needed: i64, have: i64 },

    #[error("the zero coset does not define a character")]
    ZeroCharacter,

    #[error("the zero coset does not span a line")]
    ZeroCoset,

    #[error("the two generators are F_2-linearly dependent and do not span a plane")]
    DependentPlane,

    #[error("enumeration infeasible: ambient F_2-dimension {dim} exceeds the cap of {cap}")]
    InfeasibleEnumeration { dim: u64, cap: u64 },

    #[error("invalid ramification depth r = {r}: {reason}")]
    InvalidRamificationDepth { r: i64, reason: &'static str },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid twist order {0}: an irreducible induced parameter needs order >= 2")]
    InvalidOrder(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
