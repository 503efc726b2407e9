use crate::arith::Value;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::scheme::ResolvedPoint;

/// `M_x / M_x^2` with an explicit residue-field basis of coset
/// representatives.
///
/// For a closed point with ideal `m` on `K[x]/I` the quotient `m / (m^2 + I)`
/// is finite over `K`; the residue field acts through multiplication by the
/// staircase monomials of `m`. Generic points have `M_x = 0`.
#[derive(Clone, Debug)]
pub struct CotangentSpace {
    point: ResolvedPoint,
    basis: Vec<Polynomial>,
    base_dim: usize,
    solver: Option<Solver>,
}

#[derive(Clone, Debug)]
struct Solver {
    square: GroebnerBasis,
    square_staircase: Vec<Monomial>,
    point_staircase: Vec<Monomial>,
    staircase_classes: Vec<Value>,
    /// Columns are `NF(b * c_k)` in `(k, b)` order.
    spanning: Matrix,
}

impl Solver {
    fn vector(&self, p: &Polynomial) -> Result<Vec<Value>> {
        let nf = self.square.normal_form(p)?;
        let field = p.field();
        Ok(self
            .square_staircase
            .iter()
            .map(|m| nf.coefficient(m).cloned().unwrap_or_else(|| field.zero()))
            .collect())
    }
}

impl CotangentSpace {
    pub fn compute(point: &ResolvedPoint) -> Result<Self> {
        if !point.is_closed() {
            return Ok(Self {
                point: point.clone(),
                basis: Vec::new(),
                base_dim: 0,
                solver: None,
            });
        }
        let ring = point.scheme().ring().clone();
        let field = ring.field().clone();
        let m = point.ideal();
        let mut gens = m.product(m)?.polys().to_vec();
        gens.extend_from_slice(point.scheme().gb().polys());
        let square = GroebnerBasis::compute(&ring, &gens)?;
        let square_staircase = square.staircase()?;
        let point_staircase = m.staircase()?;
        let degree = point_staircase.len();
        let base_dim = square_staircase
            .len()
            .checked_sub(degree)
            .ok_or_else(|| Error::InvariantViolation("m^2 + I is larger than m".into()))?;
        if base_dim % degree != 0 {
            return Err(Error::InvariantViolation(format!(
                "cotangent dimension {base_dim} over the base is not a multiple of the residue degree {degree}"
            )));
        }
        let staircase_classes = point_staircase
            .iter()
            .map(|b| point.evaluate(&Polynomial::monomial(&ring, b.clone(), field.one())))
            .collect::<Result<Vec<_>>>()?;
        let mut solver = Solver {
            square,
            square_staircase,
            point_staircase,
            staircase_classes,
            spanning: Matrix::zeros(&field, 0, 0),
        };

        // Greedy extraction: accept a generator when its residue-field span
        // enlarges the span found so far.
        let mut columns: Vec<Vec<Value>> = Vec::new();
        let mut basis = Vec::new();
        let mut rank = 0;
        for g in m.polys().iter().rev() {
            if rank == base_dim {
                break;
            }
            let candidate = solver
                .point_staircase
                .iter()
                .map(|b| solver.vector(&g.mul_monomial(b)))
                .collect::<Result<Vec<_>>>()?;
            let mut trial = columns.clone();
            trial.extend(candidate.iter().cloned());
            let new_rank = columns_matrix(&field, solver.square_staircase.len(), &trial).rank()?;
            if new_rank > rank {
                if new_rank - rank != degree {
                    return Err(Error::InvariantViolation(
                        "residue-field span of a generator has the wrong dimension".into(),
                    ));
                }
                columns = trial;
                rank = new_rank;
                basis.push(g.clone());
            }
        }
        if rank != base_dim {
            return Err(Error::InvariantViolation(
                "point-ideal generators do not span the cotangent space".into(),
            ));
        }
        solver.spanning = columns_matrix(&field, solver.square_staircase.len(), &columns);
        Ok(Self {
            point: point.clone(),
            basis,
            base_dim,
            solver: Some(solver),
        })
    }

    pub fn point(&self) -> &ResolvedPoint {
        &self.point
    }

    /// Dimension over the residue field.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension over the coefficient field of the ambient ring.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Residue-field coordinates of the class of `p`, which must lie in the
    /// point ideal.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Value>> {
        let Some(solver) = &self.solver else {
            return Ok(Vec::new());
        };
        let kappa = self.point.residue();
        let base = p.field();
        let target = solver.vector(p)?;
        let a = solver.spanning.solve(&target)?.ok_or_else(|| {
            Error::InvariantViolation(format!("{p} does not lie in the point ideal"))
        })?;
        let deg = solver.point_staircase.len();
        let mut coords = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let mut c = kappa.zero();
            for (b, class) in solver.staircase_classes.iter().enumerate() {
                let scalar = &a[k * deg + b];
                if base.is_zero(scalar) {
                    continue;
                }
                let lifted = kappa.embed_from(base, scalar)?;
                c = kappa.add(&c, &kappa.mul(&lifted, class)?)?;
            }
            coords.push(c);
        }
        Ok(coords)
    }
}

fn columns_matrix(field: &crate::arith::Field, rows: usize, columns: &[Vec<Value>]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    m
}
