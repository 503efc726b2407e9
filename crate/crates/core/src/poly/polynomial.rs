use std::cmp::Ordering;
use std::fmt;

use crate::arith::{Field, Value};
use crate::error::{Error, Result};

use super::{Monomial, Ring};

/// Sparse polynomial: nonzero terms sorted by decreasing monomial.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Value)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Value) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Value) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Value)>) -> Result<Self> {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Value)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::IncompatibleContext(
                    "monomial arity does not match the ring".into(),
                ));
            }
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c)?,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Ok(Self {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Value)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_coefficient(&self) -> Value {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field().zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn leading_coefficient(&self) -> &Value {
        &self
            .terms
            .first()
            .expect("zero polynomial has no leading term")
            .1
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Value> {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|(t, _)| order.cmp(m, t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        used
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::IncompatibleContext(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let order = self.ring.order();
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a.1, &b.1)?;
                    if !field.is_zero(&c) {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Value) -> Result<Polynomial> {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let v = field.mul(a, c)?;
            if !field.is_zero(&v) {
                terms.push((m.clone(), v));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Value) -> Result<Polynomial> {
        Ok(self.scale(c)?.mul_monomial(m))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c)?)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        for _ in 0..e {
            result = result.mul(self)?;
        }
        Ok(result)
    }

    pub fn monic(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.field().inv(self.leading_coefficient())?;
        self.scale(&inv)
    }

    /// Quotient of `self` by `den` when the division is exact.
    pub fn exact_quotient(&self, den: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(den)?;
        let (lm, lc) = den.terms.first().ok_or(Error::DivisionByZero)?;
        let field = self.field();
        let lc_inv = field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.terms.first() {
            let Some(q) = m.div(lm) else {
                return Ok(None);
            };
            let qc = field.mul(c, &lc_inv)?;
            rem = rem.sub(&den.mul_term(&q, &qc)?)?;
            quot = quot.add(&Polynomial::monomial(&self.ring, q, qc))?;
        }
        Ok(Some(quot))
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Polynomial> {
        let field = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            terms.push((
                Monomial::new(exps),
                field.mul(c, &field.from_i64(e as i64))?,
            ));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point whose coordinates live in `target`, an extension
    /// of the coefficient field.
    pub fn evaluate(&self, target: &Field, point: &[Value]) -> Result<Value> {
        if point.len() != self.ring.nvars() {
            return Err(Error::IncompatibleContext(
                "point has the wrong number of coordinates".into(),
            ));
        }
        let mut powers: Vec<Vec<Value>> = point
            .iter()
            .map(|v| vec![target.one(), v.clone()])
            .collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.embed_from(self.field(), c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = target.mul(powers[i].last().unwrap(), &point[i])?;
                    powers[i].push(next);
                }
                term = target.mul(&term, &powers[i][e])?;
            }
            acc = target.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; coefficients are embedded in
    /// the coefficient field of the target ring.
    pub fn compose(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::IncompatibleContext(
                "substitution has the wrong number of images".into(),
            ));
        }
        let tf = target.field();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, tf.embed_from(self.field(), c)?);
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]` and embedding coefficients.
    pub fn embed(&self, target: &Ring, var_map: &[usize]) -> Result<Polynomial> {
        let tf = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[var_map[i]] += e;
                }
            }
            terms.push((Monomial::new(exps), tf.embed_from(self.field(), c)?));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Moves the polynomial into a ring with the same variable names.
    pub fn with_ring(&self, target: &Ring) -> Result<Polynomial> {
        let map = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.embed(target, &map)
    }

    /// Applies `f` to every coefficient, landing in `target`.
    pub fn map_coefficients<F>(&self, target: &Ring, f: F) -> Result<Polynomial>
    where
        F: Fn(&Value) -> Result<Value>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), f(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(target, terms)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

fn monomial_string(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exponents()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = field.value_to_string(c);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if field.is_prime_field() => (true, rest.to_string()),
                _ => (false, cs),
            };
            let mono = monomial_string(self.ring.vars(), m);
            let body = if field.is_prime_field() || field.is_atomic(c) || mono.is_empty() {
                body
            } else {
                format!("({body})")
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&term)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    fn ring() -> Ring {
        PolyRing::new(Field::rationals(), &["x", "y"], MonomialOrder::GrevLex)
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let p = parse_polynomial(&r, "(x + y)^2").unwrap();
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        let q = parse_polynomial(&r, "x - y").unwrap();
        let prod = p.mul(&q).unwrap();
        assert_eq!(prod.to_string(), "x^3 + x^2*y - x*y^2 - y^3");
        assert_eq!(prod.exact_quotient(&q).unwrap(), Some(p.clone()));
        assert_eq!(p.exact_quotient(&q).unwrap(), None);
    }

    #[test]
    fn derivative_and_evaluation() {
        let r = ring();
        let q = Field::rationals();
        let p = parse_polynomial(&r, "y^2 - x^3 - x^2").unwrap();
        let dx = p.derivative(0).unwrap();
        assert_eq!(dx.to_string(), "-3*x^2 - 2*x");
        let v = p.evaluate(&q, &[q.from_i64(1), q.from_i64(2)]).unwrap();
        assert_eq!(v, q.from_i64(2));
    }

    #[test]
    fn composition_substitutes_variables() {
        let r = ring();
        let p = parse_polynomial(&r, "x*y + 1").unwrap();
        let images = vec![
            parse_polynomial(&r, "y").unwrap(),
            parse_polynomial(&r, "x + y").unwrap(),
        ];
        let c = p.compose(&r, &images).unwrap();
        assert_eq!(c, parse_polynomial(&r, "x*y + y^2 + 1").unwrap());
    }

    #[test]
    fn coefficient_lookup() {
        let r = ring();
        let p = parse_polynomial(&r, "3*x^2 + 5*y - 7").unwrap();
        let q = Field::rationals();
        assert_eq!(
            p.coefficient(&Monomial::new(vec![0, 1])),
            Some(&q.from_i64(5))
        );
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])), None);
        assert_eq!(p.constant_coefficient(), q.from_i64(-7));
    }
}
