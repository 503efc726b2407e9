//! Buchberger's algorithm with the product and chain criteria.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

/// Reduced, monic Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Polynomial>,
}

/// Full reduction of `p` by `divisors` (all monic).
fn reduce(p: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    let ring = p.ring().clone();
    let field = ring.field().clone();
    let mut rest = p.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        let hit = divisors.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            m.div(lm).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                let lc = g.leading_coefficient();
                let factor = if field.is_one(lc) {
                    c.clone()
                } else {
                    field.div(&c, lc)?
                };
                rest = rest.sub(&g.mul_term(&q, &factor)?)?;
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = rest.sub(&Polynomial::monomial(&ring, m, c))?;
            }
        }
    }
    Polynomial::from_terms(&ring, remainder)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = fm.lcm(gm);
    let field = f.field();
    let a = f.mul_term(&l.div(fm).unwrap(), &field.inv(f.leading_coefficient())?)?;
    let b = g.mul_term(&l.div(gm).unwrap(), &field.inv(g.leading_coefficient())?)?;
    a.sub(&b)
}

impl GroebnerBasis {
    pub fn compute(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let mut basis: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !g.ring().same(ring) {
                return Err(Error::IncompatibleContext(
                    "generator lives in another ring".into(),
                ));
            }
            if g.is_zero() {
                continue;
            }
            if g.is_constant() {
                return Ok(Self::unit(ring));
            }
            basis.push(g.monic()?);
        }
        let order = ring.order();
        let lcm_of = |basis: &[Polynomial], i: usize, j: usize| {
            basis[i]
                .leading_monomial()
                .unwrap()
                .lcm(basis[j].leading_monomial().unwrap())
        };
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pending.insert((i, j));
            }
        }
        while !pending.is_empty() {
            // Normal selection strategy: smallest lcm first, ties by index.
            let &(i, j) = pending
                .iter()
                .min_by(|a, b| {
                    order
                        .cmp(&lcm_of(&basis, a.0, a.1), &lcm_of(&basis, b.0, b.1))
                        .then(a.cmp(b))
                })
                .unwrap();
            pending.remove(&(i, j));
            let (lmi, lmj) = (
                basis[i].leading_monomial().unwrap(),
                basis[j].leading_monomial().unwrap(),
            );
            if lmi.is_coprime(lmj) {
                continue;
            }
            let l = lmi.lcm(lmj);
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && basis[k].leading_monomial().unwrap().divides(&l)
                    && !pending.contains(&key(i, k))
                    && !pending.contains(&key(j, k))
            });
            if chain {
                continue;
            }
            let h = reduce(&s_polynomial(&basis[i], &basis[j])?, &basis)?;
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(Self::unit(ring));
            }
            let h = h.monic()?;
            let n = basis.len();
            basis.push(h);
            for k in 0..n {
                pending.insert((k, n));
            }
        }
        Self::from_basis(ring, basis)
    }

    fn unit(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            polys: vec![Polynomial::one(ring)],
        }
    }

    /// Minimalises and interreduces a Gröbner basis.
    fn from_basis(ring: &Ring, basis: Vec<Polynomial>) -> Result<Self> {
        let order = ring.order();
        let mut basis = basis;
        basis.sort_by(|a, b| {
            order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        let mut minimal: Vec<Polynomial> = Vec::new();
        for g in basis {
            let lm = g.leading_monomial().unwrap();
            if minimal
                .iter()
                .any(|h| h.leading_monomial().unwrap().divides(lm))
            {
                continue;
            }
            minimal.push(g);
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, p)| p.clone())
                .collect::<Vec<_>>();
            let lead = Polynomial::monomial(
                ring,
                minimal[k].leading_monomial().unwrap().clone(),
                minimal[k].leading_coefficient().clone(),
            );
            let tail = minimal[k].sub(&lead)?;
            reduced.push(lead.add(&reduce(&tail, &others)?)?.monic()?);
        }
        Ok(Self {
            ring: ring.clone(),
            polys: reduced,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if !p.ring().same(&self.ring) {
            return Err(Error::IncompatibleContext(
                "normal form of a polynomial from another ring".into(),
            ));
        }
        reduce(p, &self.polys)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &GroebnerBasis) -> Result<bool> {
        for p in other.polys() {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let mut has_power = vec![false; self.ring.nvars()];
        for m in self.leading_monomials() {
            if let Some((i, _)) = m.pure_power() {
                has_power[i] = true;
            }
        }
        has_power.iter().all(|&b| b)
    }

    /// Standard monomials of a zero-dimensional ideal, increasing.
    pub fn staircase(&self) -> Result<Vec<Monomial>> {
        if self.is_unit() {
            return Ok(Vec::new());
        }
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut frontier = vec![Monomial::one(n)];
        let mut out = Vec::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m.exponents().to_vec()) {
                continue;
            }
            if lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for i in 0..n {
                frontier.push(m.mul(&Monomial::var(n, i)));
            }
            out.push(m);
        }
        let order = self.ring.order();
        out.sort_by(|a, b| order.cmp(a, b));
        Ok(out)
    }

    /// Krull dimension of `ring / ideal`: the largest set of variables with
    /// no leading monomial supported in it.
    pub fn krull_dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let allowed = (0..n).map(|i| mask & (1 << i) != 0).collect::<Vec<_>>();
            if !lms.iter().any(|m| m.supported_in(&allowed)) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Basis of the ideal generated by this ideal and `extra`.
    pub fn sum(&self, extra: &[Polynomial]) -> Result<GroebnerBasis> {
        let mut gens = self.polys.clone();
        gens.extend_from_slice(extra);
        GroebnerBasis::compute(&self.ring, &gens)
    }

    /// Basis of the product ideal `self * other`.
    pub fn product(&self, other: &GroebnerBasis) -> Result<GroebnerBasis> {
        let mut gens = Vec::new();
        for a in &self.polys {
            for b in &other.polys {
                gens.push(a.mul(b)?);
            }
        }
        GroebnerBasis::compute(&self.ring, &gens)
    }

    /// Elements not involving the variables flagged in `eliminated`. Only an
    /// elimination basis when the order eliminates those variables (lex with
    /// them first).
    pub fn eliminate(&self, eliminated: &[bool]) -> Vec<Polynomial> {
        let allowed = eliminated.iter().map(|e| !e).collect::<Vec<_>>();
        self.polys
            .iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.supported_in(&allowed)))
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};

    fn gb(field: Field, vars: &[&str], order: MonomialOrder, gens: &[&str]) -> GroebnerBasis {
        let ring = PolyRing::new(field, vars, order);
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(&ring, g).unwrap())
            .collect::<Vec<_>>();
        GroebnerBasis::compute(&ring, &gens).unwrap()
    }

    fn strings(b: &GroebnerBasis) -> Vec<String> {
        b.polys().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn cox_little_oshea_example() {
        // x^3 - 2xy, x^2y - 2y^2 + x under grevlex.
        let b = gb(
            Field::rationals(),
            &["x", "y"],
            MonomialOrder::GrevLex,
            &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        );
        assert_eq!(strings(&b), vec!["y^2 - 1/2*x", "x*y", "x^2"]);
        assert_eq!(b.staircase().unwrap().len(), 3);
    }

    #[test]
    fn lex_basis_is_triangular() {
        let b = gb(
            Field::rationals(),
            &["x", "y"],
            MonomialOrder::Lex,
            &["x^2 + y^2 - 1", "x - y"],
        );
        assert_eq!(strings(&b), vec!["y^2 - 1/2", "x - y"]);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let b = gb(
            Field::rationals(),
            &["x"],
            MonomialOrder::Lex,
            &["x", "x + 1"],
        );
        assert!(b.is_unit());
        assert!(matches!(b.krull_dimension(), Err(Error::UnitIdeal)));
        let z = gb(Field::rationals(), &["x", "y"], MonomialOrder::Lex, &[]);
        assert!(z.is_zero_ideal());
        assert_eq!(z.krull_dimension().unwrap(), 2);
        assert!(matches!(z.staircase(), Err(Error::NotZeroDimensional)));
    }

    #[test]
    fn dimension_of_a_curve() {
        let b = gb(
            Field::rationals(),
            &["x", "y"],
            MonomialOrder::GrevLex,
            &["y^2 - x^3 - x^2"],
        );
        assert_eq!(b.krull_dimension().unwrap(), 1);
    }

    #[test]
    fn elimination_example_lex() {
        // Variables listed y first so that lex has y > x.
        let b = gb(
            Field::rationals(),
            &["y", "x"],
            MonomialOrder::Lex,
            &["y - x^2", "y^2"],
        );
        assert_eq!(strings(&b), vec!["x^4", "y - x^2"]);
        let r = b.ring().clone();
        let x3 = parse_polynomial(&r, "x^5 + y*x^2 - x^4").unwrap();
        assert!(b.contains(&x3).unwrap());
    }

    #[test]
    fn normal_form_single_step() {
        let b = gb(
            Field::rationals(),
            &["x", "y"],
            MonomialOrder::Lex,
            &["x^2 - y"],
        );
        let r = b.ring().clone();
        let nf = b
            .normal_form(&parse_polynomial(&r, "x^3").unwrap())
            .unwrap();
        assert_eq!(nf.to_string(), "x*y");
        let node = gb(
            Field::rationals(),
            &["x", "y"],
            MonomialOrder::GrevLex,
            &["x^2", "x*y", "y^2"],
        );
        assert_eq!(strings(&node), vec!["y^2", "x*y", "x^2"]);
        let r = node.ring().clone();
        let p = parse_polynomial(&r, "y^2 - x^3 - x^2").unwrap();
        assert!(node.normal_form(&p).unwrap().is_zero());
        assert_eq!(node.staircase().unwrap().len(), 3);
        assert_eq!(node.krull_dimension().unwrap(), 0);
    }

    #[test]
    fn staircase_of_inseparable_curve_is_infinite() {
        let f2 = Field::prime(2).unwrap();
        let b = gb(f2, &["u", "v"], MonomialOrder::GrevLex, &["v^2 - u"]);
        assert!(matches!(b.staircase(), Err(Error::NotZeroDimensional)));
        assert_eq!(b.krull_dimension().unwrap(), 1);
    }

    #[test]
    fn product_with_unit_ideal() {
        let q = Field::rationals();
        let i = gb(q.clone(), &["x"], MonomialOrder::GrevLex, &["x^2 + 1"]);
        let one = gb(q, &["x"], MonomialOrder::GrevLex, &["1"]);
        let prod = i.product(&one).unwrap();
        assert_eq!(strings(&prod), strings(&i));
        let sq = i.product(&i).unwrap();
        assert_eq!(strings(&sq), vec!["x^4 + 2*x^2 + 1"]);
    }

    #[test]
    fn square_of_maximal_ideal() {
        let f2 = Field::prime(2).unwrap();
        let m = gb(f2, &["u", "v"], MonomialOrder::GrevLex, &["u", "v"]);
        let sq = m.product(&m).unwrap();
        assert_eq!(sq.staircase().unwrap().len(), 3);
    }
}
