use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Ring};

use super::{Field, Value};

/// `base[vars] / (gb)` with a zero-dimensional reduced Gröbner basis.
///
/// Elements are normal forms; the staircase of `gb` is the explicit basis
/// over `base`.
pub struct TowerField {
    ring: Ring,
    gb: GroebnerBasis,
    staircase: Vec<Monomial>,
}

impl TowerField {
    pub(crate) fn new(ring: Ring, gb: GroebnerBasis) -> Result<Self> {
        if !gb.ring().same(&ring) {
            return Err(Error::IncompatibleContext(
                "tower basis lives in another ring".into(),
            ));
        }
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let staircase = gb.staircase()?;
        Ok(Self {
            ring,
            gb,
            staircase,
        })
    }

    pub fn base(&self) -> &Field {
        self.ring.field()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    /// Degree of the extension over the base.
    pub fn dimension(&self) -> usize {
        self.staircase.len()
    }

    pub(crate) fn reduce_poly(&self, p: Polynomial) -> Polynomial {
        self.gb
            .normal_form(&p)
            .expect("tower reduction stays inside its own ring")
    }

    /// Coefficients of a normal form on the staircase basis.
    pub fn coordinates(&self, p: &Polynomial) -> Vec<Value> {
        let base = self.base();
        self.staircase
            .iter()
            .map(|m| p.coefficient(m).cloned().unwrap_or_else(|| base.zero()))
            .collect()
    }

    pub(crate) fn poly_from_coordinates(&self, coords: &[Value]) -> Result<Polynomial> {
        let terms = self
            .staircase
            .iter()
            .cloned()
            .zip(coords.iter().cloned())
            .collect::<Vec<_>>();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Matrix of multiplication by `p` on the staircase basis (columns are
    /// images of basis monomials).
    pub fn multiplication_matrix(&self, p: &Polynomial) -> Result<Matrix> {
        let n = self.dimension();
        let mut m = Matrix::zeros(self.base(), n, n);
        for (j, mono) in self.staircase.iter().enumerate() {
            let image = self.reduce_poly(p.mul_monomial(mono));
            for (i, c) in self.coordinates(&image).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    pub(crate) fn invert(&self, field: &Field, a: &Value) -> Result<Value> {
        let Value::Residue(p) = a else {
            unreachable!("checked by caller")
        };
        let m = self.multiplication_matrix(p)?;
        let mut rhs = vec![self.base().zero(); self.dimension()];
        let one = self.reduce_poly(Polynomial::one(&self.ring));
        for (i, c) in self.coordinates(&one).into_iter().enumerate() {
            rhs[i] = c;
        }
        match m.solve(&rhs)? {
            Some(x) => Ok(Value::Residue(self.poly_from_coordinates(&x)?)),
            None => {
                let kernel = m.nullspace()?;
                let w = kernel
                    .into_iter()
                    .next()
                    .expect("singular multiplication matrix has a kernel");
                let mut witness = self.poly_from_coordinates(&w)?;
                // Scale so that the smallest monomial carries coefficient 1.
                if let Some((_, c)) = witness.terms().last() {
                    let c = c.clone();
                    witness = witness.scale(&self.base().inv(&c)?)?;
                }
                Err(Error::ZeroDivisor {
                    element: Box::new(field.element(a.clone())),
                    witness: Box::new(field.element(Value::Residue(witness))),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    fn quotient(field: Field, vars: &[&str], rels: &[&str]) -> Field {
        let ring = PolyRing::new(field, vars, MonomialOrder::Lex);
        let gens = rels
            .iter()
            .map(|r| parse_polynomial(&ring, r).unwrap())
            .collect::<Vec<_>>();
        let gb = GroebnerBasis::compute(&ring, &gens).unwrap();
        Field::tower(ring, gb).unwrap()
    }

    fn elem(f: &Field, s: &str) -> Value {
        let ring = f.as_tower().unwrap().ring().clone();
        Value::Residue(
            f.as_tower()
                .unwrap()
                .reduce_poly(parse_polynomial(&ring, s).unwrap()),
        )
    }

    #[test]
    fn gaussian_integer_inverse() {
        let k = quotient(Field::rationals(), &["x"], &["x^2 + 1"]);
        let inv = k.inv(&elem(&k, "1 + x")).unwrap();
        assert_eq!(inv, elem(&k, "1/2 - 1/2*x"));
    }

    #[test]
    fn zero_divisor_witness_for_split_quadratic() {
        let k = quotient(Field::rationals(), &["x"], &["x^2 - 1"]);
        let err = k.inv(&elem(&k, "1 + x")).unwrap_err();
        match err {
            Error::ZeroDivisor { element, witness } => {
                assert_eq!(witness.value(), &elem(&k, "1 - x"));
                assert!(element.mul(&witness).unwrap().is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tower_dimension_is_product_of_step_degrees() {
        let k = quotient(Field::rationals(), &["a", "b"], &["a^2 - 2", "b^3 - a"]);
        assert_eq!(k.dimension_over_base(), Some(6));
    }

    #[test]
    fn every_nonzero_element_of_f9_is_invertible() {
        let f3 = Field::prime(3).unwrap();
        let k = quotient(f3, &["x"], &["x^2 + 1"]);
        for a in 0..3 {
            for b in 0..3 {
                if a == 0 && b == 0 {
                    continue;
                }
                let v = elem(&k, &format!("{a} + {b}*x"));
                let inv = k.inv(&v).unwrap();
                assert!(k.is_one(&k.mul(&v, &inv).unwrap()));
            }
        }
    }
}
