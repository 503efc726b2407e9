use crate::arith::Value;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scheme::{AffinePresentation, EmbeddingMap, Morphism, ResolvedPoint};

use super::derivation::gradient_at;
use super::{CotangentSpace, DerivationSpace, RelativeTangent};

/// `Phi: T^Gro -> T_x X`, restricting a derivation to `M_x / M_x^2`.
///
/// Column `j` holds the values of the `j`-th derivation on the cotangent
/// basis, so it is a dual coordinate vector of `T_x X`.
#[derive(Clone, Debug)]
pub struct PhiMap {
    /// Gradients of the cotangent representatives at `x`, one per row.
    gradients: Matrix,
    matrix: Matrix,
    rank: usize,
    columns_in_relative: bool,
    injective: bool,
    surjective_onto_relative: bool,
}

impl PhiMap {
    pub fn compute(d: &DerivationSpace, c: &CotangentSpace, r: &RelativeTangent) -> Result<Self> {
        let kappa = c.point().residue().clone();
        let n = c.point().scheme().nvars();
        let rows = c
            .basis()
            .iter()
            .map(|m| gradient_at(m, c.point()))
            .collect::<Result<Vec<_>>>()?;
        let gradients = Matrix::from_rows(&kappa, n, rows);
        let matrix = gradients.mul(&d.basis_matrix())?;
        let mut columns_in_relative = true;
        for j in 0..matrix.cols() {
            columns_in_relative &= r.contains(&matrix.column(j))?;
        }
        let rank = matrix.rank()?;
        Ok(Self {
            gradients,
            injective: rank == d.dim(),
            surjective_onto_relative: rank == r.dim(),
            matrix,
            rank,
            columns_in_relative,
        })
    }

    pub fn gradients(&self) -> &Matrix {
        &self.gradients
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns_in_relative(&self) -> bool {
        self.columns_in_relative
    }

    pub fn injective(&self) -> bool {
        self.injective
    }

    pub fn surjective_onto_relative(&self) -> bool {
        self.surjective_onto_relative
    }

    pub fn is_iso(&self) -> bool {
        self.injective && self.surjective_onto_relative
    }
}

/// `kappa(x) (x)_{kappa(s)} (fiber algebra)` with its rational point
/// `x_i -> x_i(x)`.
#[derive(Clone, Debug)]
pub struct BaseChangeAlgebra {
    presentation: AffinePresentation,
    point: ResolvedPoint,
    cotangent: CotangentSpace,
}

impl BaseChangeAlgebra {
    pub fn build(
        f: &Morphism,
        x: &ResolvedPoint,
        s: &ResolvedPoint,
        ix: &EmbeddingMap,
    ) -> Result<Self> {
        let kx = x.residue().clone();
        let ring = f.source().ring().with_field(kx.clone());
        let mut gens = f
            .source()
            .gens()
            .iter()
            .map(|h| h.with_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        for (g, sj) in f.pullbacks().iter().zip(s.coords()) {
            let c = Polynomial::constant(&ring, ix.apply(sj)?);
            gens.push(g.with_ring(&ring)?.sub(&c)?);
        }
        let presentation = AffinePresentation::new(&ring, gens)?;
        let point_gens = x
            .coords()
            .iter()
            .enumerate()
            .map(|(i, a)| Polynomial::var(&ring, i).sub(&Polynomial::constant(&ring, a.clone())))
            .collect::<Result<Vec<_>>>()?;
        let ideal = GroebnerBasis::compute(&ring, &point_gens)?;
        let point = ResolvedPoint::from_maximal_ideal(&presentation, ideal)?;
        let cotangent = CotangentSpace::compute(&point)?;
        Ok(Self {
            presentation,
            point,
            cotangent,
        })
    }

    pub fn presentation(&self) -> &AffinePresentation {
        &self.presentation
    }

    pub fn point(&self) -> &ResolvedPoint {
        &self.point
    }

    pub fn cotangent(&self) -> &CotangentSpace {
        &self.cotangent
    }

    /// Coordinates of the class of `x_i - x_i(x)`.
    pub fn coordinate_class(&self, i: usize) -> Result<Vec<Value>> {
        let ring = self.presentation.ring();
        let a = Polynomial::constant(ring, self.point.coords()[i].clone());
        self.cotangent
            .coordinates(&Polynomial::var(ring, i).sub(&a)?)
    }
}

/// `theta: M_x / M_x^2 -> M~ / M~^2` on the cotangent space of `x` on the
/// fiber-reduced scheme.
#[derive(Clone, Debug)]
pub struct ThetaMap {
    matrix: Matrix,
    rank: usize,
    iso: bool,
}

impl ThetaMap {
    pub fn compute(source: &CotangentSpace, b: &BaseChangeAlgebra) -> Result<Self> {
        let kappa = b.point().residue().clone();
        let ring = b.presentation().ring();
        let target_dim = b.cotangent().dim();
        let mut matrix = Matrix::zeros(&kappa, target_dim, source.dim());
        for (k, m) in source.basis().iter().enumerate() {
            let col = b.cotangent().coordinates(&m.with_ring(ring)?)?;
            for (i, v) in col.into_iter().enumerate() {
                matrix.set(i, k, v);
            }
        }
        let rank = matrix.rank()?;
        let iso = target_dim == source.dim() && rank == target_dim;
        Ok(Self { matrix, rank, iso })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_iso(&self) -> bool {
        self.iso
    }
}

/// `Upsilon: T^Zar -> T^Gro`, built from `theta^{-1}`, with the results of
/// checking both compositions against the identity.
#[derive(Clone, Debug)]
pub struct UpsilonMap {
    /// `n x dim C`; sends a dual coordinate vector to a derivation vector.
    matrix: Matrix,
    lands_in_derivations: bool,
    phi_after_upsilon: bool,
    upsilon_after_phi: bool,
}

impl UpsilonMap {
    /// `source` is the fiber-reduced cotangent space on which `theta` was
    /// computed and `c` the cotangent space of `x` on `X`.
    pub fn compute(
        theta: &ThetaMap,
        source: &CotangentSpace,
        b: &BaseChangeAlgebra,
        c: &CotangentSpace,
        r: &RelativeTangent,
        d: &DerivationSpace,
        phi: &PhiMap,
    ) -> Result<Self> {
        if !theta.is_iso() {
            return Err(Error::ThetaNotInvertible);
        }
        let inverse = theta.matrix().inverse()?.ok_or(Error::ThetaNotInvertible)?;
        let kappa = c.point().residue().clone();
        let n = c.point().scheme().nvars();

        // lift[l][k]: coordinate l in C of the k-th representative of the source.
        let mut lift = Matrix::zeros(&kappa, c.dim(), source.dim());
        for (k, m) in source.basis().iter().enumerate() {
            for (l, v) in c.coordinates(m)?.into_iter().enumerate() {
                lift.set(l, k, v);
            }
        }
        let mut w = Matrix::zeros(&kappa, n, source.dim());
        for i in 0..n {
            let wi = inverse.mul_vec(&b.coordinate_class(i)?)?;
            for (k, v) in wi.into_iter().enumerate() {
                w.set(i, k, v);
            }
        }
        let matrix = w.mul(&lift.transpose())?;

        let mut lands_in_derivations = true;
        let mut phi_after_upsilon = true;
        for v in r.annihilator() {
            let dv = matrix.mul_vec(v)?;
            lands_in_derivations &= d.contains(&dv)?;
            let back = phi.gradients().mul_vec(&dv)?;
            phi_after_upsilon &= back.iter().zip(v).all(|(a, b)| kappa.eq(a, b));
        }
        let mut upsilon_after_phi = true;
        for dv in d.basis() {
            let there = phi.gradients().mul_vec(dv)?;
            let back = matrix.mul_vec(&there)?;
            upsilon_after_phi &= back.iter().zip(dv).all(|(a, b)| kappa.eq(a, b));
        }
        Ok(Self {
            matrix,
            lands_in_derivations,
            phi_after_upsilon,
            upsilon_after_phi,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn lands_in_derivations(&self) -> bool {
        self.lands_in_derivations
    }

    pub fn phi_after_upsilon_is_identity(&self) -> bool {
        self.phi_after_upsilon
    }

    pub fn upsilon_after_phi_is_identity(&self) -> bool {
        self.upsilon_after_phi
    }

    pub fn identities_hold(&self) -> bool {
        self.lands_in_derivations && self.phi_after_upsilon && self.upsilon_after_phi
    }
}
