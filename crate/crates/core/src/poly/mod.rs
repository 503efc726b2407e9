//! Sparse multivariate polynomials over runtime fields.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{PolyRing, Ring};
