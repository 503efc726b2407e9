//! Exact coefficient and residue fields.
//!
//! A [`Field`] is a cheap, shareable descriptor. Values of a field are plain
//! [`Value`]s; all arithmetic goes through the descriptor so that towers and
//! fraction fields can reduce their representatives. [`FieldElement`] pairs a
//! value with its descriptor for public-facing use.
//!
//! Four kinds of field exist:
//!
//! * the rationals,
//! * prime fields `F_p`,
//! * towers: `base[x_1..x_n] / m` for a zero-dimensional ideal `m` given by a
//!   reduced Gröbner basis (a finite extension when `m` is maximal),
//! * fraction fields of `base[x_1..x_n] / P` for an ideal `P` asserted prime.
//!
//! Inversion in a tower is a linear solve over the base, so a non-maximal
//! ideal surfaces as a [`Error::ZeroDivisor`] carrying an explicit witness.

mod fraction;
mod irreducible;
mod minpoly;
mod prime;
mod tower;
mod unipoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{Polynomial, Ring};

pub use fraction::FractionField;
pub use irreducible::{irreducibility_check, Irreducibility};
pub use minpoly::minimal_polynomial;
pub use tower::TowerField;
pub use unipoly::UniPoly;

/// Which prime field sits at the bottom of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => p,
        }
    }

    pub fn field(self) -> Result<Field> {
        match self {
            BaseField::Rationals => Ok(Field::rationals()),
            BaseField::Prime(p) => Field::prime(p),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// A value of some field. Only meaningful together with its [`Field`].
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Rational(BigRational),
    Modular(u64),
    /// Normal form of a residue class in a tower.
    Residue(Polynomial),
    /// Numerator and denominator, both normal forms modulo the prime.
    Fraction(Box<(Polynomial, Polynomial)>),
}

pub(crate) enum FieldKind {
    Rationals,
    Prime(u64),
    Tower(TowerField),
    Fraction(FractionField),
}

/// Shareable field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !prime::is_prime(p) || p >= (1 << 32) {
            return Err(Error::Parse(format!(
                "characteristic {p} is not a prime below 2^32"
            )));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// Residue ring `ring / (gb)` as a field; `gb` must be zero-dimensional.
    pub fn tower(ring: Ring, gb: GroebnerBasis) -> Result<Field> {
        Ok(Field(Arc::new(FieldKind::Tower(TowerField::new(
            ring, gb,
        )?))))
    }

    /// Fraction field of `ring / (gb)`; primality of the ideal is trusted.
    pub fn fraction(ring: Ring, gb: GroebnerBasis) -> Result<Field> {
        Ok(Field(Arc::new(FieldKind::Fraction(FractionField::new(
            ring, gb,
        )?))))
    }

    pub(crate) fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn as_tower(&self) -> Option<&TowerField> {
        match self.kind() {
            FieldKind::Tower(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_fraction(&self) -> Option<&FractionField> {
        match self.kind() {
            FieldKind::Fraction(fr) => Some(fr),
            _ => None,
        }
    }

    /// Immediate base field, `None` for prime fields.
    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => None,
            FieldKind::Tower(t) => Some(t.base()),
            FieldKind::Fraction(fr) => Some(fr.base()),
        }
    }

    pub fn prime_field(&self) -> BaseField {
        match self.kind() {
            FieldKind::Rationals => BaseField::Rationals,
            FieldKind::Prime(p) => BaseField::Prime(*p),
            FieldKind::Tower(t) => t.base().prime_field(),
            FieldKind::Fraction(fr) => fr.base().prime_field(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.prime_field().characteristic()
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.kind(), FieldKind::Rationals | FieldKind::Prime(_))
    }

    /// Whether the field is finite; fraction fields are reported as infinite.
    pub fn is_finite(&self) -> bool {
        match self.kind() {
            FieldKind::Rationals => false,
            FieldKind::Prime(_) => true,
            FieldKind::Tower(t) => t.base().is_finite(),
            FieldKind::Fraction(_) => false,
        }
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<BigUint> {
        match self.kind() {
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Tower(t) => t.base().order().map(|q| q.pow(t.dimension() as u32)),
            _ => None,
        }
    }

    /// Pointer or structural identity of descriptors.
    pub fn same(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.kind(), other.kind()) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime(p), FieldKind::Prime(q)) => p == q,
            (FieldKind::Tower(a), FieldKind::Tower(b)) => {
                a.ring().same(b.ring()) && a.gb().polys() == b.gb().polys()
            }
            (FieldKind::Fraction(a), FieldKind::Fraction(b)) => {
                a.ring().same(b.ring()) && a.gb().polys() == b.gb().polys()
            }
            _ => false,
        }
    }

    pub fn zero(&self) -> Value {
        match self.kind() {
            FieldKind::Rationals => Value::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Value::Modular(0),
            FieldKind::Tower(t) => Value::Residue(Polynomial::zero(t.ring())),
            FieldKind::Fraction(fr) => {
                fraction::make(Polynomial::zero(fr.ring()), Polynomial::one(fr.ring()))
            }
        }
    }

    pub fn one(&self) -> Value {
        match self.kind() {
            FieldKind::Rationals => Value::Rational(BigRational::one()),
            FieldKind::Prime(_) => Value::Modular(1),
            FieldKind::Tower(t) => Value::Residue(t.reduce_poly(Polynomial::one(t.ring()))),
            FieldKind::Fraction(fr) => {
                fraction::make(Polynomial::one(fr.ring()), Polynomial::one(fr.ring()))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match self.kind() {
            FieldKind::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Value::Modular(prime::reduce_bigint(n, *p)),
            _ => {
                let base = self.base().expect("extension field has a base");
                self.lift(&base.from_bigint(n))
            }
        }
    }

    /// Maps a rational number into the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Value> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }

    /// Embeds a value of the immediate base field as a constant.
    pub fn lift(&self, v: &Value) -> Value {
        match self.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => v.clone(),
            FieldKind::Tower(t) => {
                Value::Residue(t.reduce_poly(Polynomial::constant(t.ring(), v.clone())))
            }
            FieldKind::Fraction(fr) => fraction::make(
                Polynomial::constant(fr.ring(), v.clone()),
                Polynomial::one(fr.ring()),
            ),
        }
    }

    /// Embeds a value of `sub` where `sub` is this field or one of its
    /// iterated base fields.
    pub fn embed_from(&self, sub: &Field, v: &Value) -> Result<Value> {
        if self.same(sub) {
            return Ok(v.clone());
        }
        match self.base() {
            Some(base) => Ok(self.lift(&base.embed_from(sub, v)?)),
            None => Err(Error::IncompatibleContext(format!(
                "{sub:?} is not a subfield of {self:?}"
            ))),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Rational(q) => q.is_zero(),
            Value::Modular(a) => *a == 0,
            Value::Residue(p) => p.is_zero(),
            Value::Fraction(nd) => nd.0.is_zero(),
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        match self.kind() {
            FieldKind::Fraction(_) => match v {
                Value::Fraction(nd) => self.eq(v, &self.one()) || nd.0 == nd.1,
                _ => false,
            },
            _ => *v == self.one(),
        }
    }

    pub fn eq(&self, a: &Value, b: &Value) -> bool {
        match self.kind() {
            FieldKind::Fraction(fr) => fr.equal(a, b),
            _ => a == b,
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (FieldKind::Rationals, Value::Rational(q)) => Value::Rational(-q),
            (FieldKind::Prime(p), Value::Modular(x)) => Value::Modular((p - x) % p),
            (FieldKind::Tower(_), Value::Residue(poly)) => Value::Residue(poly.neg()),
            (FieldKind::Fraction(_), Value::Fraction(nd)) => {
                Value::Fraction(Box::new((nd.0.neg(), nd.1.clone())))
            }
            _ => panic!("value does not belong to field {self:?}"),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        match (self.kind(), a, b) {
            (FieldKind::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Ok(Value::Rational(x + y))
            }
            (FieldKind::Prime(p), Value::Modular(x), Value::Modular(y)) => {
                Ok(Value::Modular((x + y) % p))
            }
            (FieldKind::Tower(_), Value::Residue(x), Value::Residue(y)) => {
                Ok(Value::Residue(x.add(y)?))
            }
            (FieldKind::Fraction(fr), Value::Fraction(_), Value::Fraction(_)) => fr.add(a, b),
            _ => Err(self.mismatch()),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Result<Value> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        match (self.kind(), a, b) {
            (FieldKind::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Ok(Value::Rational(x * y))
            }
            (FieldKind::Prime(p), Value::Modular(x), Value::Modular(y)) => {
                Ok(Value::Modular(prime::mul_mod(*x, *y, *p)))
            }
            (FieldKind::Tower(t), Value::Residue(x), Value::Residue(y)) => {
                Ok(Value::Residue(t.reduce_poly(x.mul(y)?)))
            }
            (FieldKind::Fraction(fr), Value::Fraction(_), Value::Fraction(_)) => fr.mul(a, b),
            _ => Err(self.mismatch()),
        }
    }

    pub fn inv(&self, a: &Value) -> Result<Value> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self.kind(), a) {
            (FieldKind::Rationals, Value::Rational(x)) => Ok(Value::Rational(x.recip())),
            (FieldKind::Prime(p), Value::Modular(x)) => Ok(Value::Modular(prime::inv_mod(*x, *p))),
            (FieldKind::Tower(t), Value::Residue(_)) => t.invert(self, a),
            (FieldKind::Fraction(fr), Value::Fraction(_)) => fr.invert(a),
            _ => Err(self.mismatch()),
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        let binv = self.inv(b)?;
        self.mul(a, &binv)
    }

    pub fn pow(&self, a: &Value, exp: u64) -> Result<Value> {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn pow_big(&self, a: &Value, exp: &BigUint) -> Result<Value> {
        let mut result = self.one();
        for i in (0..exp.bits()).rev() {
            result = self.mul(&result, &result)?;
            if exp.bit(i) {
                result = self.mul(&result, a)?;
            }
        }
        Ok(result)
    }

    /// Uniform random element of a finite field.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Value> {
        match self.kind() {
            FieldKind::Prime(p) => Some(Value::Modular(rng.gen_range(0..*p))),
            FieldKind::Tower(t) => {
                let base = t.base();
                let mut terms = Vec::new();
                for m in t.staircase() {
                    terms.push((m.clone(), base.random_element(rng)?));
                }
                let poly = Polynomial::from_terms(t.ring(), terms).ok()?;
                Some(Value::Residue(poly))
            }
            _ => None,
        }
    }

    /// Dimension over the immediate base, when finite and explicit.
    pub fn dimension_over_base(&self) -> Option<usize> {
        match self.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => Some(1),
            FieldKind::Tower(t) => Some(t.dimension()),
            FieldKind::Fraction(fr) => fr.finite_staircase().map(|s| s.len()),
        }
    }

    /// Coordinates of `v` over the immediate base in the explicit monomial
    /// basis, when the field is finite over its base.
    pub fn coordinates_over_base(&self, v: &Value) -> Result<Vec<Value>> {
        match (self.kind(), v) {
            (FieldKind::Tower(t), Value::Residue(p)) => Ok(t.coordinates(p)),
            (FieldKind::Fraction(fr), Value::Fraction(_)) => fr.coordinates(v),
            (FieldKind::Rationals | FieldKind::Prime(_), _) => Ok(vec![v.clone()]),
            _ => Err(self.mismatch()),
        }
    }

    pub fn element(&self, v: Value) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: v,
        }
    }

    pub fn fmt_value(&self, v: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match v {
            Value::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Modular(a) => write!(f, "{a}"),
            Value::Residue(p) => write!(f, "{p}"),
            Value::Fraction(nd) => {
                if nd.1.is_one() {
                    write!(f, "{}", nd.0)
                } else {
                    write!(f, "({})/({})", nd.0, nd.1)
                }
            }
        }
    }

    pub fn value_to_string(&self, v: &Value) -> String {
        self.element(v.clone()).to_string()
    }

    /// Whether a value is a "simple" term for display purposes.
    pub(crate) fn is_atomic(&self, v: &Value) -> bool {
        match v {
            Value::Rational(q) => q.is_integer() && !q.is_negative(),
            Value::Modular(_) => true,
            Value::Residue(p) => {
                p.terms().len() <= 1 && p.terms().iter().all(|(_, c)| p.ring().field().is_atomic(c))
            }
            Value::Fraction(nd) => nd.1.is_one() && nd.0.terms().len() <= 1,
        }
    }

    /// Whether the value is minus an atomic value (for sign-aware display).
    pub(crate) fn is_negative_display(&self, v: &Value) -> bool {
        match v {
            Value::Rational(q) => q.is_negative(),
            _ => false,
        }
    }

    pub(crate) fn rational_value(v: &Value) -> Option<&BigRational> {
        match v {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    fn mismatch(&self) -> Error {
        Error::IncompatibleContext(format!("value does not belong to {self:?}"))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
            FieldKind::Tower(t) => write!(
                f,
                "{:?}[{}]/({})",
                t.base(),
                t.ring().vars().join(","),
                join_polys(t.gb().polys())
            ),
            FieldKind::Fraction(fr) => write!(
                f,
                "Frac({:?}[{}]/({}))",
                fr.base(),
                fr.ring().vars().join(","),
                join_polys(fr.gb().polys())
            ),
        }
    }
}

fn join_polys(ps: &[Polynomial]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// A value tagged with the field it lives in.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

impl FieldElement {
    pub fn new(field: Field, value: Value) -> Self {
        Self { field, value }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::IncompatibleContext(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )))
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.add(&self.value, &other.value)?))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.sub(&self.value, &other.value)?))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.mul(&self.value, &other.value)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(&self.value))
    }

    pub fn invert(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(&self.value)?))
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }

    pub fn equals(&self, other: &FieldElement) -> bool {
        self.field.same(&other.field) && self.field.eq(&self.value, &other.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.field.fmt_value(&self.value, f)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.mul(&a, &b).unwrap(), Value::Modular(1));
        assert_eq!(f.inv(&a).unwrap(), Value::Modular(5));
        assert_eq!(f.from_i64(-1), Value::Modular(6));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn rational_from_fraction_in_fp() {
        let f = Field::prime(5).unwrap();
        let half = f
            .from_rational(&BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(half, Value::Modular(3));
        let bad = f.from_rational(&BigRational::new(1.into(), 5.into()));
        assert!(matches!(bad, Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_has_no_inverse() {
        let q = Field::rationals();
        assert!(matches!(q.inv(&q.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn big_power_matches_small_power() {
        let f = Field::prime(101).unwrap();
        let a = f.from_i64(17);
        let small = f.pow(&a, 1234).unwrap();
        let big = f.pow_big(&a, &BigUint::from(1234u32)).unwrap();
        assert_eq!(small, big);
    }
}
