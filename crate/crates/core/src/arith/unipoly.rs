use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

use super::{Field, Value};

/// Dense univariate polynomial over a [`Field`], coefficients low to high.
#[derive(Clone)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Value>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<Value>) -> Self {
        let mut p = Self {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::new(field, vec![field.one()])
    }

    /// The monomial `t`.
    pub fn t(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(&self.coeff(i), &other.coeff(i))?);
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn neg(&self) -> UniPoly {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Value) -> Result<UniPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| self.field.mul(a, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.field, coeffs))
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b)?;
                out[i + j] = self.field.add(&out[i + j], &prod)?;
            }
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn monic(&self) -> Result<UniPoly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) => {
                let inv = self.field.inv(lc)?;
                self.scale(&inv)
            }
        }
    }

    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.field.inv(divisor.leading().expect("nonzero"))?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            if self.field.is_zero(&lead) {
                rem.pop();
                continue;
            }
            let c = self.field.mul(&lead, &lc_inv)?;
            let shift = top - dd;
            quot[shift] = c.clone();
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                let prod = self.field.mul(&c, dc)?;
                rem[shift + k] = self.field.sub(&rem[shift + k], &prod)?;
            }
            rem.pop();
        }
        Ok((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Quotient of an exact division; errors if a remainder is left.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                self.field
                    .mul(c, &self.field.from_i64(i as i64))
                    .expect("scalar multiplication by an integer")
            })
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn eval(&self, x: &Value) -> Result<Value> {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x)?, c)?;
        }
        Ok(acc)
    }

    pub fn mulmod(&self, other: &UniPoly, modulus: &UniPoly) -> Result<UniPoly> {
        self.mul(other)?.rem(modulus)
    }

    pub fn powmod(&self, exp: &BigUint, modulus: &UniPoly) -> Result<UniPoly> {
        let base = self.rem(modulus)?;
        let mut result = Self::one(&self.field).rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            result = result.mulmod(&result, modulus)?;
            if exp.bit(i) {
                result = result.mulmod(&base, modulus)?;
            }
        }
        Ok(result)
    }

    pub fn equals(&self, other: &UniPoly) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| self.field.eq(a, b))
    }

    /// Reads a polynomial that only involves variable `var` of its ring.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Result<UniPoly> {
        let field = p.ring().field().clone();
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e > 0)
            {
                return Err(Error::IncompatibleContext(format!(
                    "{p} is not univariate in {}",
                    p.ring().vars()[var]
                )));
            }
            let e = m.exponents()[var] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, field.zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(&field, coeffs))
    }

    pub fn to_polynomial(&self, ring: &Ring, var: usize) -> Result<Polynomial> {
        let n = ring.nvars();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| {
                let mut exps = vec![0u32; n];
                exps[var] = e as u32;
                (Monomial::new(exps), c.clone())
            })
            .collect::<Vec<_>>();
        Polynomial::from_terms(ring, terms)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.value_to_string(c);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if self.field.is_prime_field() => (true, rest.to_string()),
                _ => (false, cs),
            };
            let body = if self.field.is_atomic(c) || self.field.is_negative_display(c) {
                body
            } else {
                format!("({body})")
            };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = match (i, body.as_str()) {
                (0, _) => body.clone(),
                (_, "1") => mono,
                _ => format!("{body}*{mono}"),
            };
            if out.is_empty() {
                out = if neg { format!("-{term}") } else { term };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self} over {:?})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_rationals() {
        let q = Field::rationals();
        let a = UniPoly::from_i64s(&q, &[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64s(&q, &[1, 1]); // t + 1
        let g = a.gcd(&b).unwrap();
        assert!(g.equals(&b));
        let c = UniPoly::from_i64s(&q, &[1, 0, 1]);
        assert!(a.gcd(&c).unwrap().is_one());
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f2 = Field::prime(2).unwrap();
        let p = UniPoly::from_i64s(&f2, &[1, 0, 1]);
        assert!(p.derivative().is_zero());
        let f3 = Field::prime(3).unwrap();
        let p = UniPoly::from_i64s(&f3, &[0, 0, 0, 1]);
        assert!(p.derivative().is_zero());
    }

    #[test]
    fn display_is_readable() {
        let q = Field::rationals();
        let p = UniPoly::from_i64s(&q, &[-2, 0, 1]);
        assert_eq!(p.to_string(), "t^2 - 2");
    }

    #[test]
    fn powmod_fermat() {
        let f5 = Field::prime(5).unwrap();
        let modulus = UniPoly::from_i64s(&f5, &[2, 0, 1]); // t^2 + 2 irreducible over F5
        let t = UniPoly::t(&f5);
        // t^(25) = t in F_25
        let r = t.powmod(&BigUint::from(25u32), &modulus).unwrap();
        assert!(r.equals(&t));
    }
}
