use crate::arith::{Field, Value};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scheme::{Morphism, ResolvedPoint};

/// Jacobian rows `(d p / d x_i)(x)` over the residue field of `point`.
pub fn jacobian_at(polys: &[Polynomial], point: &ResolvedPoint) -> Result<Matrix> {
    let kappa = point.residue();
    let n = point.scheme().nvars();
    let rows = polys
        .iter()
        .map(|p| gradient_at(p, point))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(kappa, n, rows))
}

/// `(d p / d x_1 (x), ..., d p / d x_n (x))`.
pub fn gradient_at(p: &Polynomial, point: &ResolvedPoint) -> Result<Vec<Value>> {
    (0..p.ring().nvars())
        .map(|i| point.evaluate(&p.derivative(i)?))
        .collect()
}

/// Stacks two matrices with the same number of columns.
pub(crate) fn stack(field: &Field, top: &Matrix, bottom: &Matrix) -> Matrix {
    let rows = (0..top.rows())
        .map(|i| top.row(i))
        .chain((0..bottom.rows()).map(|i| bottom.row(i)))
        .collect();
    Matrix::from_rows(field, top.cols(), rows)
}

/// Derivations `O_X,x -> kappa(x)` over `O_S,s`, each encoded by its values
/// on the coordinate functions.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    constraints: Matrix,
    basis: Vec<Vec<Value>>,
}

impl DerivationSpace {
    /// Kernel of the Jacobian of the scheme ideal stacked over the Jacobian
    /// of the pullbacks.
    pub fn compute(f: &Morphism, x: &ResolvedPoint) -> Result<Self> {
        let mut polys = x.scheme().gb().polys().to_vec();
        polys.extend_from_slice(f.pullbacks());
        Self::from_polys(&polys, x)
    }

    /// Derivations killing every polynomial in `polys`.
    pub fn from_polys(polys: &[Polynomial], x: &ResolvedPoint) -> Result<Self> {
        let constraints = jacobian_at(polys, x)?;
        let basis = constraints.nullspace()?;
        Ok(Self { constraints, basis })
    }

    pub fn constraints(&self) -> &Matrix {
        &self.constraints
    }

    pub fn basis(&self) -> &[Vec<Value>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &Field {
        self.constraints.field()
    }

    pub fn contains(&self, d: &[Value]) -> Result<bool> {
        let image = self.constraints.mul_vec(d)?;
        Ok(image.iter().all(|v| self.field().is_zero(v)))
    }

    /// Basis vectors as the columns of an `n x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        let n = self.constraints.cols();
        let mut m = Matrix::zeros(self.field(), n, self.dim());
        for (j, d) in self.basis.iter().enumerate() {
            for (i, v) in d.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }
}
