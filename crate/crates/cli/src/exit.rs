use tangent_core::Error;

use crate::file::{BuildError, FileError};

pub const OK: i32 = 0;
pub const INPUT: i32 = 1;
pub const UNSUPPORTED: i32 = 2;
pub const INVALID_POINT: i32 = 3;
pub const INVARIANT: i32 = 4;

/// Exit code for an error from the algebra layer.
pub fn code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnknownVariable(_)
        | Error::InvalidPointSpec(_)
        | Error::InvalidMorphism(_)
        | Error::UnitIdeal => INPUT,
        Error::UnsupportedPoint(_)
        | Error::NotZeroDimensional
        | Error::UnsupportedExtension(_)
        | Error::NotFiniteOverBase => UNSUPPORTED,
        Error::ZeroDivisor { .. }
        | Error::ReducibleTowerStep { .. }
        | Error::PointNotOnScheme { .. }
        | Error::PointImageMismatch(_) => INVALID_POINT,
        Error::InvariantViolation(_)
        | Error::ThetaNotInvertible
        | Error::DivisionByZero
        | Error::IncompatibleContext(_) => INVARIANT,
    }
}

pub fn code_for_file(e: &FileError) -> i32 {
    match e {
        FileError::Parse { .. } | FileError::Semantic(_) => INPUT,
    }
}

pub fn code_for_build(e: &BuildError) -> i32 {
    match e {
        BuildError::File(f) => code_for_file(f),
        BuildError::Algebra(a) => code_for(a),
    }
}
