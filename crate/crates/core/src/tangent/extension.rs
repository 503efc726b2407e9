use crate::arith::{minimal_polynomial, UniPoly};
use crate::error::{Error, Result};
use crate::scheme::{Fiber, ResolvedPoint};

use super::jacobian_at;

/// `dim Omega_{kappa(x)/kappa(s)}`, read off the Jacobian of the ideal of `x`
/// on the fiber.
pub fn omega_residue_dim(fiber: &Fiber) -> Result<usize> {
    let point = fiber.point();
    let n = point.scheme().nvars();
    let jac = jacobian_at(point.ideal().polys(), point)?;
    Ok(n - jac.rank()?)
}

/// Algebraicity and separability of `kappa(s) -> kappa(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClass {
    pub algebraic: bool,
    /// `None` when the extension is not algebraic.
    pub separable: Option<bool>,
    pub omega_dim: usize,
    /// Separability of the adjoined coordinates by `gcd(mu, mu') = 1`, when a
    /// finite basis over `kappa(s)` is available.
    pub gcd_separable: Option<bool>,
}

impl ExtensionClass {
    pub fn classify(x: &ResolvedPoint, s: &ResolvedPoint, fiber: &Fiber) -> Result<Self> {
        let algebraic = x.transcendence_degree()? == s.transcendence_degree()?;
        let omega_dim = omega_residue_dim(fiber)?;
        let gcd_separable = if algebraic {
            gcd_criterion(s, fiber)?
        } else {
            None
        };
        let separable = if !algebraic {
            None
        } else if x.residue().characteristic() == 0 {
            if omega_dim != 0 {
                return Err(Error::InvariantViolation(format!(
                    "algebraic extension in characteristic 0 with Omega of dimension {omega_dim}"
                )));
            }
            Some(true)
        } else {
            Some(omega_dim == 0)
        };
        if let (Some(a), Some(b)) = (separable, gcd_separable) {
            if a != b {
                return Err(Error::InvariantViolation(format!(
                    "separability tests disagree: Omega says {a}, minimal polynomials say {b}"
                )));
            }
        }
        Ok(Self {
            algebraic,
            separable,
            omega_dim,
            gcd_separable,
        })
    }
}

fn gcd_criterion(s: &ResolvedPoint, fiber: &Fiber) -> Result<Option<bool>> {
    let ks = s.residue();
    let kf = fiber.point().residue();
    if kf.same(ks) {
        return Ok(Some(true));
    }
    if !kf.base().is_some_and(|b| b.same(ks)) || kf.dimension_over_base().is_none() {
        return Ok(None);
    }
    for c in fiber.point().coords() {
        let mu = minimal_polynomial(kf, c)?;
        let g = mu.gcd(&mu.derivative())?;
        if !is_unit(&g) {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn is_unit(g: &UniPoly) -> bool {
    g.degree() == Some(0)
}
