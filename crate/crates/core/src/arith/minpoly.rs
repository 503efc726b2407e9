use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::{Field, UniPoly, Value};

/// Minimal polynomial of `v` over the immediate base field of `field`.
///
/// Found as the first linear dependency among `1, v, v^2, ...` in the
/// coordinates over the base. Prime fields return `t - v`.
pub fn minimal_polynomial(field: &Field, v: &Value) -> Result<UniPoly> {
    let Some(base) = field.base() else {
        return Ok(UniPoly::new(field, vec![field.neg(v), field.one()]));
    };
    let n = field
        .dimension_over_base()
        .ok_or(Error::NotFiniteOverBase)?;
    let mut powers = vec![field.coordinates_over_base(&field.one())?];
    let mut current = field.one();
    for d in 1..=n {
        current = field.mul(&current, v)?;
        let target = field.coordinates_over_base(&current)?;
        let mut m = Matrix::zeros(base, n, d);
        for (j, col) in powers.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        if let Some(sol) = m.solve(&target)? {
            let mut coeffs = sol.iter().map(|c| base.neg(c)).collect::<Vec<_>>();
            coeffs.push(base.one());
            return Ok(UniPoly::new(base, coeffs));
        }
        powers.push(target);
    }
    Err(Error::InvariantViolation(
        "no linear dependency among powers up to the field degree".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::GroebnerBasis;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    #[test]
    fn sqrt2_plus_sqrt3_has_degree_four() {
        let q = Field::rationals();
        let ring = PolyRing::new(q.clone(), &["a", "b"], MonomialOrder::Lex);
        let gens = vec![
            parse_polynomial(&ring, "a^2 - 2").unwrap(),
            parse_polynomial(&ring, "b^2 - 3").unwrap(),
        ];
        let gb = GroebnerBasis::compute(&ring, &gens).unwrap();
        let k = Field::tower(ring.clone(), gb).unwrap();
        let v = Value::Residue(parse_polynomial(&ring, "a + b").unwrap());
        let mu = minimal_polynomial(&k, &v).unwrap();
        // t^4 - 10 t^2 + 1
        assert!(mu.equals(&UniPoly::from_i64s(&q, &[1, 0, -10, 0, 1])));
        let base_elt = Value::Residue(parse_polynomial(&ring, "3").unwrap());
        let mu = minimal_polynomial(&k, &base_elt).unwrap();
        assert!(mu.equals(&UniPoly::from_i64s(&q, &[-3, 1])));
    }
}
