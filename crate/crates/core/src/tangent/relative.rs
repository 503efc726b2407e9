use crate::arith::Value;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scheme::{Morphism, ResolvedPoint};

use super::CotangentSpace;

/// `T^Zar_{X/S}(x)`: tangent vectors of `X` at `x` killing the image of
/// `M_s / M_s^2`.
#[derive(Clone, Debug)]
pub struct RelativeTangent {
    pulled_back: Vec<Polynomial>,
    /// One row per pulled-back generator: its coordinates in the cotangent
    /// basis.
    image: Matrix,
    rank: usize,
    annihilator: Vec<Vec<Value>>,
}

impl RelativeTangent {
    pub fn compute(f: &Morphism, s: &ResolvedPoint, c: &CotangentSpace) -> Result<Self> {
        let kappa = c.point().residue().clone();
        let pulled_back = if s.is_closed() {
            s.ideal()
                .polys()
                .iter()
                .map(|q| f.pullback(q))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let rows = pulled_back
            .iter()
            .map(|q| c.coordinates(q))
            .collect::<Result<Vec<_>>>()?;
        let image = Matrix::from_rows(&kappa, c.dim(), rows);
        let rank = image.rank()?;
        let annihilator = image.nullspace()?;
        Ok(Self {
            pulled_back,
            image,
            rank,
            annihilator,
        })
    }

    /// `q(g_1, ..., g_m)` for the generators `q` of `M_s`.
    pub fn pulled_back(&self) -> &[Polynomial] {
        &self.pulled_back
    }

    pub fn image(&self) -> &Matrix {
        &self.image
    }

    pub fn image_rank(&self) -> usize {
        self.rank
    }

    pub fn annihilator(&self) -> &[Vec<Value>] {
        &self.annihilator
    }

    pub fn dim(&self) -> usize {
        self.annihilator.len()
    }

    pub fn contains(&self, v: &[Value]) -> Result<bool> {
        let out = self.image.mul_vec(v)?;
        Ok(out.iter().all(|e| self.image.field().is_zero(e)))
    }
}
