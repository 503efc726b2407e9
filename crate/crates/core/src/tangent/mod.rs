//! Tangent spaces at a point and the maps comparing them.
//!
//! Everything is expressed in explicit bases over the residue field `kappa(x)`:
//! cotangent classes are polynomial representatives, tangent vectors are dual
//! coordinate rows, and derivations are vectors of values on the coordinate
//! functions.

mod analysis;
mod cotangent;
mod derivation;
mod extension;
mod maps;
mod relative;

pub use analysis::{analyze, ComparisonReport, Problem};
pub use cotangent::CotangentSpace;
pub use derivation::{gradient_at, jacobian_at, DerivationSpace};
pub use extension::{omega_residue_dim, ExtensionClass};
pub use maps::{BaseChangeAlgebra, PhiMap, ThetaMap, UpsilonMap};
pub use relative::RelativeTangent;
