use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Ring};

use super::{Field, UniPoly, Value};

/// Fraction field of `base[vars] / P` for an ideal `P` asserted prime.
///
/// Two fractions `a/b`, `c/d` are equal iff `ad - bc` reduces to zero modulo
/// `P`. When `P` is zero-dimensional the quotient ring is already a field and
/// every fraction is normalised to `(a * b^-1) / 1`, which makes the
/// representation canonical. The univariate case `base(t)` cancels gcds.
pub struct FractionField {
    ring: Ring,
    gb: GroebnerBasis,
    staircase: Option<Vec<Monomial>>,
    univariate_free: bool,
}

pub(crate) fn make(num: Polynomial, den: Polynomial) -> Value {
    Value::Fraction(Box::new((num, den)))
}

fn parts(v: &Value) -> (&Polynomial, &Polynomial) {
    match v {
        Value::Fraction(nd) => (&nd.0, &nd.1),
        _ => unreachable!("fraction field values are fractions"),
    }
}

impl FractionField {
    pub(crate) fn new(ring: Ring, gb: GroebnerBasis) -> Result<Self> {
        if !gb.ring().same(&ring) {
            return Err(Error::IncompatibleContext(
                "prime ideal basis lives in another ring".into(),
            ));
        }
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let staircase = match gb.staircase() {
            Ok(s) => Some(s),
            Err(Error::NotZeroDimensional) => None,
            Err(e) => return Err(e),
        };
        let univariate_free = ring.nvars() == 1 && gb.polys().is_empty();
        Ok(Self {
            ring,
            gb,
            staircase,
            univariate_free,
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

    /// Staircase basis over the base when the prime is zero-dimensional.
    pub fn finite_staircase(&self) -> Option<&[Monomial]> {
        self.staircase.as_deref()
    }

    /// A fresh descriptor for error payloads.
    fn descriptor(&self) -> Field {
        Field::fraction(self.ring.clone(), self.gb.clone())
            .expect("descriptor was valid at construction")
    }

    fn nf(&self, p: &Polynomial) -> Result<Polynomial> {
        self.gb.normal_form(p)
    }

    pub(crate) fn normalize(&self, num: Polynomial, den: Polynomial) -> Result<Value> {
        let mut num = self.nf(&num)?;
        let mut den = self.nf(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(make(num, Polynomial::one(&self.ring)));
        }
        if let Some(staircase) = &self.staircase {
            if !den.is_one() {
                let inv = self.algebra_inverse(staircase, &den)?;
                num = self.nf(&num.mul(&inv)?)?;
                den = Polynomial::one(&self.ring);
            }
            return Ok(make(num, den));
        }
        if self.univariate_free {
            let un = UniPoly::from_polynomial(&num, 0)?;
            let ud = UniPoly::from_polynomial(&den, 0)?;
            let g = un.gcd(&ud)?;
            if g.degree() > Some(0) {
                num = un.div_exact(&g)?.to_polynomial(&self.ring, 0)?;
                den = ud.div_exact(&g)?.to_polynomial(&self.ring, 0)?;
            }
        }
        let base = self.base().clone();
        if den.is_constant() {
            let c = den.constant_coefficient();
            let cinv = base.inv(&c)?;
            return Ok(make(num.scale(&cinv)?, Polynomial::one(&self.ring)));
        }
        let lc = den.leading_coefficient().clone();
        if !base.is_one(&lc) {
            let lcinv = base.inv(&lc)?;
            num = num.scale(&lcinv)?;
            den = den.scale(&lcinv)?;
        }
        if let Some(q) = num.exact_quotient(&den)? {
            return Ok(make(self.nf(&q)?, Polynomial::one(&self.ring)));
        }
        Ok(make(num, den))
    }

    /// Inverse of `b` inside the finite-dimensional algebra `base[vars]/P`.
    fn algebra_inverse(&self, staircase: &[Monomial], b: &Polynomial) -> Result<Polynomial> {
        let base = self.base();
        let n = staircase.len();
        let mut m = Matrix::zeros(base, n, n);
        let coords = |p: &Polynomial| -> Vec<Value> {
            staircase
                .iter()
                .map(|mono| p.coefficient(mono).cloned().unwrap_or_else(|| base.zero()))
                .collect()
        };
        for (j, mono) in staircase.iter().enumerate() {
            let image = self.nf(&b.mul_monomial(mono))?;
            for (i, c) in coords(&image).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let one = self.nf(&Polynomial::one(&self.ring))?;
        match m.solve(&coords(&one))? {
            Some(x) => {
                let terms = staircase.iter().cloned().zip(x).collect::<Vec<_>>();
                Polynomial::from_terms(&self.ring, terms)
            }
            None => {
                let w = m.nullspace()?.into_iter().next().expect("kernel exists");
                let terms = staircase.iter().cloned().zip(w).collect::<Vec<_>>();
                let witness = Polynomial::from_terms(&self.ring, terms)?;
                let field = self.descriptor();
                let one = Polynomial::one(&self.ring);
                Err(Error::ZeroDivisor {
                    element: Box::new(field.element(make(b.clone(), one.clone()))),
                    witness: Box::new(field.element(make(witness, one))),
                })
            }
        }
    }

    fn zero_divisor(&self, a: &Polynomial, b: &Polynomial) -> Error {
        let field = self.descriptor();
        let one = Polynomial::one(&self.ring);
        Error::ZeroDivisor {
            element: Box::new(field.element(make(a.clone(), one.clone()))),
            witness: Box::new(field.element(make(b.clone(), one))),
        }
    }

    pub(crate) fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        let (an, ad) = parts(a);
        let (bn, bd) = parts(b);
        if ad == bd {
            return self.normalize(an.add(bn)?, ad.clone());
        }
        let den = self.nf(&ad.mul(bd)?)?;
        if den.is_zero() {
            return Err(self.zero_divisor(ad, bd));
        }
        let num = an.mul(bd)?.add(&bn.mul(ad)?)?;
        self.normalize(num, den)
    }

    pub(crate) fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        let (an, ad) = parts(a);
        let (bn, bd) = parts(b);
        let den = self.nf(&ad.mul(bd)?)?;
        if den.is_zero() {
            return Err(self.zero_divisor(ad, bd));
        }
        let num = self.nf(&an.mul(bn)?)?;
        if num.is_zero() && !an.is_zero() && !bn.is_zero() {
            return Err(self.zero_divisor(an, bn));
        }
        self.normalize(num, den)
    }

    pub(crate) fn invert(&self, a: &Value) -> Result<Value> {
        let (an, ad) = parts(a);
        if an.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.normalize(ad.clone(), an.clone())
    }

    pub(crate) fn equal(&self, a: &Value, b: &Value) -> bool {
        let (an, ad) = parts(a);
        let (bn, bd) = parts(b);
        if an == bn && ad == bd {
            return true;
        }
        let cross = an
            .mul(bd)
            .and_then(|l| bn.mul(ad).and_then(|r| l.sub(&r)))
            .and_then(|d| self.nf(&d));
        matches!(cross, Ok(d) if d.is_zero())
    }

    pub(crate) fn coordinates(&self, v: &Value) -> Result<Vec<Value>> {
        let staircase = self.staircase.as_ref().ok_or(Error::NotFiniteOverBase)?;
        let (n, d) = parts(v);
        let num = if d.is_one() {
            n.clone()
        } else {
            let inv = self.algebra_inverse(staircase, d)?;
            self.nf(&n.mul(&inv)?)?
        };
        let base = self.base();
        Ok(staircase
            .iter()
            .map(|m| num.coefficient(m).cloned().unwrap_or_else(|| base.zero()))
            .collect())
    }
}
