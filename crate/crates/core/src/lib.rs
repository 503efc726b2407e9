//! Exact tangent-space computations for affine schemes of finite type over
//! `Q` or `F_p`.

pub mod arith;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod scheme;
pub mod tangent;

pub use error::{Error, Result};
