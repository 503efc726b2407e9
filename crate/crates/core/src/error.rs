use thiserror::Error;

use crate::arith::FieldElement;

/// Errors raised anywhere in the algebra stack.
///
/// Point-validity failures carry explicit certificates so that callers can
/// print them (a zero divisor together with its annihilating witness, a
/// generator that does not vanish, ...).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ZeroDivisorWitness: {element} * ({witness}) = 0 with both factors nonzero")]
    ZeroDivisor {
        element: Box<FieldElement>,
        witness: Box<FieldElement>,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live in different fields or rings: {0}")]
    IncompatibleContext(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,

    #[error("no finite basis over the requested base field")]
    NotFiniteOverBase,

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("point is not on the scheme: generator {generator} evaluates to {value}")]
    PointNotOnScheme { generator: String, value: String },

    #[error(
        "reducible tower step {step}; ZeroDivisorWitness: ({factor}) * ({cofactor}) = 0 in the residue ring"
    )]
    ReducibleTowerStep {
        step: String,
        factor: String,
        cofactor: String,
    },

    #[error("invalid point specification: {0}")]
    InvalidPointSpec(String),

    #[error("image of x is not s: {0}")]
    PointImageMismatch(String),

    #[error("pullback does not respect the relations of the target: {0}")]
    InvalidMorphism(String),

    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),

    #[error("unsupported residue extension: {0}")]
    UnsupportedExtension(String),

    #[error("theta is not invertible")]
    ThetaNotInvertible,

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
