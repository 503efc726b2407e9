use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Field, FieldKind, UniPoly, Value};

/// Outcome of an irreducibility test.
#[derive(Debug, Clone)]
pub enum Irreducibility {
    Irreducible,
    /// Carries a nontrivial monic factor.
    Reducible(UniPoly),
    /// No decision was attempted (rational towers, trusted points).
    Skipped,
}

impl Irreducibility {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Irreducibility::Reducible(_))
    }
}

const ROOT_SEARCH_LIMIT: u64 = 1 << 16;
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Decides irreducibility of a univariate polynomial of degree at least one.
///
/// Over finite fields the test always runs (distinct-degree splitting plus a
/// seeded equal-degree factorisation to extract a witness). Over the
/// rationals it is a rational-root search, complete up to degree three, and
/// is skipped entirely when `trust_point` is set.
pub fn irreducibility_check(p: &UniPoly, trust_point: bool, seed: u64) -> Result<Irreducibility> {
    let deg = p.degree().ok_or(Error::DivisionByZero)?;
    if deg == 0 {
        return Err(Error::InvariantViolation(
            "irreducibility of a constant is undefined".into(),
        ));
    }
    let p = p.monic()?;
    if deg == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let field = p.field().clone();
    if field.is_finite() {
        return finite_field_check(&p, seed);
    }
    if trust_point {
        return Ok(Irreducibility::Skipped);
    }
    match field.kind() {
        FieldKind::Rationals => rational_check(&p),
        _ => Ok(Irreducibility::Skipped),
    }
}

fn rational_check(p: &UniPoly) -> Result<Irreducibility> {
    let field = p.field();
    let rats = p
        .coeffs()
        .iter()
        .map(|c| {
            Field::rational_value(c)
                .cloned()
                .expect("rational coefficients")
        })
        .collect::<Vec<_>>();
    let lcm = rats.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = rats
        .iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect::<Vec<_>>();
    let deg = ints.len() - 1;
    if ints[0].is_zero() {
        return Ok(Irreducibility::Reducible(UniPoly::t(field)));
    }
    let (Some(c0), Some(cn)) = (ints[0].abs().to_u64(), ints[deg].abs().to_u64()) else {
        return Ok(Irreducibility::Skipped);
    };
    if c0 > DIVISOR_SEARCH_LIMIT || cn > DIVISOR_SEARCH_LIMIT {
        return Ok(Irreducibility::Skipped);
    }
    for a in divisors(c0) {
        for b in divisors(cn) {
            if a.gcd(&b) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(sign) * BigInt::from(a), BigInt::from(b));
                let rv = Value::Rational(r.clone());
                if field.is_zero(&p.eval(&rv)?) {
                    let factor = UniPoly::new(field, vec![Value::Rational(-r), field.one()]);
                    return Ok(Irreducibility::Reducible(factor));
                }
            }
        }
    }
    if deg <= 3 {
        Ok(Irreducibility::Irreducible)
    } else {
        Ok(Irreducibility::Skipped)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn finite_field_check(p: &UniPoly, seed: u64) -> Result<Irreducibility> {
    let field = p.field().clone();
    let q = field.order().expect("finite field has an order");
    let deg = p.degree().expect("nonzero");

    // Smallest root first over small prime fields, for readable witnesses.
    if let FieldKind::Prime(prime) = field.kind() {
        if *prime <= ROOT_SEARCH_LIMIT {
            for r in 0..*prime {
                let rv = Value::Modular(r);
                if field.is_zero(&p.eval(&rv)?) {
                    let factor = UniPoly::new(&field, vec![field.neg(&rv), field.one()]);
                    return Ok(Irreducibility::Reducible(factor));
                }
            }
        }
    }

    let dp = p.derivative();
    if dp.is_zero() {
        return Ok(Irreducibility::Reducible(pth_root(p, &q)?));
    }
    let g = p.gcd(&dp)?;
    if g.degree() > Some(0) {
        return Ok(Irreducibility::Reducible(g));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = UniPoly::t(&field);
    let mut h = t.clone();
    for i in 1..=deg / 2 {
        h = h.powmod(&q, p)?;
        let g = h.sub(&t)?.gcd(p)?;
        if g.degree() > Some(0) {
            let factor = if g.degree() == Some(i) {
                g
            } else {
                equal_degree_factor(&g, i, &q, &mut rng)?
            };
            return Ok(Irreducibility::Reducible(factor));
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// `p = h^char` when `p' = 0` over a perfect field; returns monic `h`.
fn pth_root(p: &UniPoly, q: &BigUint) -> Result<UniPoly> {
    let field = p.field();
    let ch = field.characteristic() as usize;
    // x -> x^(q/p) inverts Frobenius on F_q.
    let root_exp = q / BigUint::from(ch as u64);
    let coeffs = p
        .coeffs()
        .iter()
        .step_by(ch)
        .map(|c| field.pow_big(c, &root_exp))
        .collect::<Result<Vec<_>>>()?;
    UniPoly::new(field, coeffs).monic()
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` factors.
fn equal_degree_factor(
    g: &UniPoly,
    d: usize,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
) -> Result<UniPoly> {
    let field = g.field().clone();
    let ch = field.characteristic();
    let mut current = g.clone();
    let qd = q.pow(d as u32);
    let half = (&qd - BigUint::one()) / BigUint::from(2u32);
    let ext_bits = if ch == 2 { (qd.bits() - 1) as usize } else { 0 };
    while current.degree() > Some(d) {
        let n = current.degree().expect("nonzero");
        let coeffs = (0..n)
            .map(|_| field.random_element(rng).expect("finite field"))
            .collect::<Vec<_>>();
        let a = UniPoly::new(&field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if ch == 2 {
            // Trace map a + a^2 + ... + a^(2^(kd-1)).
            let mut acc = a.rem(&current)?;
            let mut term = acc.clone();
            for _ in 1..ext_bits {
                term = term.mulmod(&term, &current)?;
                acc = acc.add(&term)?;
            }
            acc
        } else {
            a.powmod(&half, &current)?.sub(&UniPoly::one(&field))?
        };
        let f = b.gcd(&current)?;
        let fd = f.degree().unwrap_or(0);
        if fd > 0 && fd < n {
            let other = current.div_exact(&f)?.monic()?;
            current = if fd <= n - fd { f } else { other };
        }
    }
    current.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reducible_factor(r: Irreducibility) -> UniPoly {
        match r {
            Irreducibility::Reducible(f) => f,
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    /// Brute force over F_p: irreducible iff no monic factor of degree
    /// <= n/2 divides.
    fn brute_force_irreducible(p: &UniPoly, prime: u64) -> bool {
        let field = p.field();
        let n = p.degree().unwrap();
        for d in 1..=n / 2 {
            let count = prime.pow(d as u32);
            for code in 0..count {
                let mut coeffs = Vec::new();
                let mut c = code;
                for _ in 0..d {
                    coeffs.push(field.from_i64((c % prime) as i64));
                    c /= prime;
                }
                coeffs.push(field.one());
                let f = UniPoly::new(field, coeffs);
                if p.rem(&f).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x2_plus_1_over_q_is_irreducible() {
        let q = Field::rationals();
        let p = UniPoly::from_i64s(&q, &[1, 0, 1]);
        assert!(matches!(
            irreducibility_check(&p, false, 0).unwrap(),
            Irreducibility::Irreducible
        ));
        assert!(matches!(
            irreducibility_check(&p, true, 0).unwrap(),
            Irreducibility::Skipped
        ));
    }

    #[test]
    fn x2_minus_1_over_f3_has_factor_x_minus_1() {
        let f3 = Field::prime(3).unwrap();
        let p = UniPoly::from_i64s(&f3, &[-1, 0, 1]);
        let f = reducible_factor(irreducibility_check(&p, false, 7).unwrap());
        assert!(f.equals(&UniPoly::from_i64s(&f3, &[-1, 1])));
    }

    #[test]
    fn x2_plus_1_over_f2_is_a_square() {
        let f2 = Field::prime(2).unwrap();
        let p = UniPoly::from_i64s(&f2, &[1, 0, 1]);
        let f = reducible_factor(irreducibility_check(&p, false, 7).unwrap());
        assert!(f.equals(&UniPoly::from_i64s(&f2, &[1, 1])));
    }

    #[test]
    fn x2_minus_1_over_q_has_rational_root() {
        let q = Field::rationals();
        let p = UniPoly::from_i64s(&q, &[-1, 0, 1]);
        let f = reducible_factor(irreducibility_check(&p, false, 0).unwrap());
        assert!(f.equals(&UniPoly::from_i64s(&q, &[-1, 1])));
    }

    #[test]
    fn quartic_without_roots_is_split_by_ddf() {
        // (t^2 + 1)(t^2 + t + 2) over F_3: no roots, two quadratic factors.
        let f3 = Field::prime(3).unwrap();
        let a = UniPoly::from_i64s(&f3, &[1, 0, 1]);
        let b = UniPoly::from_i64s(&f3, &[2, 1, 1]);
        let p = a.mul(&b).unwrap();
        let f = reducible_factor(irreducibility_check(&p, false, 3).unwrap());
        assert_eq!(f.degree(), Some(2));
        assert!(p.rem(&f).unwrap().is_zero());
    }

    #[test]
    fn agrees_with_brute_force_over_small_fields() {
        for prime in [2u64, 3, 5] {
            let field = Field::prime(prime).unwrap();
            for code in 0..prime.pow(3) {
                let mut coeffs = Vec::new();
                let mut c = code;
                for _ in 0..3 {
                    coeffs.push(field.from_i64((c % prime) as i64));
                    c /= prime;
                }
                coeffs.push(field.one());
                let p = UniPoly::new(&field, coeffs);
                let got = irreducibility_check(&p, false, code).unwrap();
                assert_eq!(
                    !got.is_reducible(),
                    brute_force_irreducible(&p, prime),
                    "{p} over F{prime}"
                );
                if let Irreducibility::Reducible(f) = got {
                    assert!(p.rem(&f).unwrap().is_zero());
                    assert!(f.degree() < p.degree() && f.degree() > Some(0));
                }
            }
        }
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
