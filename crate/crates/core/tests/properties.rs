use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tangent_core::arith::{minimal_polynomial, Field, UniPoly, Value};
use tangent_core::groebner::GroebnerBasis;
use tangent_core::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use tangent_core::scheme::{AffinePresentation, ResolvedPoint};

type Terms = Vec<(i64, u32, u32)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-4i64..=4, 0u32..=3, 0u32..=3), 0..5)
}

fn build(ring: &Ring, t: &Terms) -> Polynomial {
    let f = ring.field();
    let terms = t
        .iter()
        .map(|&(c, a, b)| (Monomial::new(vec![a, b]), f.from_i64(c)))
        .collect();
    Polynomial::from_terms(ring, terms).unwrap()
}

fn rings() -> Vec<Ring> {
    let mut out = Vec::new();
    for field in [
        Field::rationals(),
        Field::prime(2).unwrap(),
        Field::prime(5).unwrap(),
    ] {
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            out.push(PolyRing::new(field.clone(), &["x", "y"], order));
        }
    }
    out
}

fn field_point(field: &Field, a: i64, b: i64) -> Vec<Value> {
    vec![field.from_i64(a), field.from_i64(b)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_satisfies_leibniz(f in terms(), g in terms(), r in 0usize..6, v in 0usize..2) {
        let ring = &rings()[r];
        let (f, g) = (build(ring, &f), build(ring, &g));
        let lhs = f.mul(&g).unwrap().derivative(v).unwrap();
        let rhs = f.derivative(v).unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.derivative(v).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in terms(), g in terms(), r in 0usize..6, a in -3i64..3, b in -3i64..3) {
        let ring = &rings()[r];
        let field = ring.field();
        let (f, g) = (build(ring, &f), build(ring, &g));
        let pt = field_point(field, a, b);
        let fg = f.mul(&g).unwrap().evaluate(field, &pt).unwrap();
        let sum = f.add(&g).unwrap().evaluate(field, &pt).unwrap();
        let fa = f.evaluate(field, &pt).unwrap();
        let ga = g.evaluate(field, &pt).unwrap();
        prop_assert!(field.eq(&fg, &field.mul(&fa, &ga).unwrap()));
        prop_assert!(field.eq(&sum, &field.add(&fa, &ga).unwrap()));
    }

    #[test]
    fn normal_form_is_idempotent_and_decides_membership(
        gens in prop::collection::vec(terms(), 1..3),
        p in terms(),
        q in terms(),
        r in 0usize..6,
    ) {
        let ring = &rings()[r];
        let gens: Vec<_> = gens.iter().map(|t| build(ring, t)).collect();
        let gb = GroebnerBasis::compute(ring, &gens).unwrap();
        let p = build(ring, &p);
        let nf = gb.normal_form(&p).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        // p - NF(p) lies in the ideal, and so does every multiple of a generator.
        prop_assert!(gb.contains(&p.sub(&nf).unwrap()).unwrap());
        let q = build(ring, &q);
        for g in &gens {
            prop_assert!(gb.contains(&g.mul(&q).unwrap()).unwrap());
        }
        // No term of a normal form is divisible by a leading monomial.
        for (m, _) in nf.terms() {
            prop_assert!(gb.leading_monomials().iter().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn groebner_basis_ignores_generator_order(
        gens in prop::collection::vec(terms(), 1..4),
        r in 0usize..6,
    ) {
        let ring = &rings()[r];
        let gens: Vec<_> = gens.iter().map(|t| build(ring, t)).collect();
        let mut rev = gens.clone();
        rev.reverse();
        let a = GroebnerBasis::compute(ring, &gens).unwrap();
        let b = GroebnerBasis::compute(ring, &rev).unwrap();
        prop_assert_eq!(a.polys(), b.polys());
    }

    #[test]
    fn triangular_staircase_has_product_size(
        d1 in 1u32..4,
        d2 in 1u32..4,
        low1 in prop::collection::vec(-3i64..3, 3),
        low2 in prop::collection::vec(-3i64..3, 3),
        r in 0usize..6,
    ) {
        // x^d1 + (lower in x), y^d2 + (lower in x, y): the quotient has
        // dimension d1 * d2 whatever the lower terms are.
        let ring = &rings()[r];
        let f = ring.field();
        let mut t1 = vec![(Monomial::new(vec![d1, 0]), f.one())];
        for (e, &c) in low1.iter().enumerate().take(d1 as usize) {
            t1.push((Monomial::new(vec![e as u32, 0]), f.from_i64(c)));
        }
        let mut t2 = vec![(Monomial::new(vec![0, d2]), f.one())];
        for (e, &c) in low2.iter().enumerate().take(d2 as usize) {
            t2.push((Monomial::new(vec![1, e as u32]), f.from_i64(c)));
        }
        let gens = vec![
            Polynomial::from_terms(ring, t1).unwrap(),
            Polynomial::from_terms(ring, t2).unwrap(),
        ];
        let gb = GroebnerBasis::compute(ring, &gens).unwrap();
        prop_assert_eq!(gb.staircase().unwrap().len(), (d1 * d2) as usize);
    }

    #[test]
    fn tower_inverses_and_minimal_polynomials(seed in any::<u64>(), k in 0usize..3) {
        let (p, modulus) = [(2u64, "t^3 + t + 1"), (5, "t^2 + 2"), (3, "t^2 + 1")][k];
        let base = Field::prime(p).unwrap();
        let ring = PolyRing::new(base.clone(), &["t"], MonomialOrder::Lex);
        let m = tangent_core::poly::parse_polynomial(&ring, modulus).unwrap();
        let gb = GroebnerBasis::compute(&ring, &[m]).unwrap();
        let field = Field::tower(ring, gb).unwrap();
        let degree = field.dimension_over_base().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = field.random_element(&mut rng).unwrap();
        if !field.is_zero(&a) {
            let inv = field.inv(&a).unwrap();
            prop_assert!(field.is_one(&field.mul(&a, &inv).unwrap()));
        }
        let mu = minimal_polynomial(&field, &a).unwrap();
        let deg = mu.degree().unwrap();
        prop_assert!(degree.is_multiple_of(deg));
        // mu(a) = 0, and no monic polynomial of smaller degree kills a: the
        // powers 1, a, ..., a^(deg-1) are independent over the base.
        let lifted = UniPoly::new(
            &field,
            mu.coeffs().iter().map(|c| field.embed_from(&base, c).unwrap()).collect(),
        );
        prop_assert!(field.is_zero(&lifted.eval(&a).unwrap()));
        let mut rows = Vec::new();
        let mut pw = field.one();
        for _ in 0..deg {
            rows.push(field.coordinates_over_base(&pw).unwrap());
            pw = field.mul(&pw, &a).unwrap();
        }
        let mat = tangent_core::linalg::Matrix::from_rows(&base, degree, rows);
        prop_assert_eq!(mat.rank().unwrap(), deg);
    }
}

#[test]
fn fraction_field_identifies_equivalent_fractions() {
    let q = Field::rationals();
    let ring = PolyRing::new(q, &["t"], MonomialOrder::GrevLex);
    let line = AffinePresentation::new(&ring, Vec::new()).unwrap();
    let generic = ResolvedPoint::generic(&line).unwrap();
    let k = generic.residue();
    let t = &generic.coords()[0];
    let one = k.one();
    // (t^2 - 1) / (t - 1) = t + 1.
    let num = k.sub(&k.mul(t, t).unwrap(), &one).unwrap();
    let den = k.sub(t, &one).unwrap();
    let lhs = k.div(&num, &den).unwrap();
    let rhs = k.add(t, &one).unwrap();
    assert!(k.eq(&lhs, &rhs));
    assert_eq!(k.value_to_string(&lhs), k.value_to_string(&rhs));
}
