use tangent_core::arith::Field;
use tangent_core::poly::{parse_polynomial, MonomialOrder, PolyRing};
use tangent_core::scheme::{AffinePresentation, Morphism, PointSpec, ResolveOptions};
use tangent_core::tangent::{analyze, ComparisonReport, Problem};
use tangent_core::Error;

fn scheme(field: &Field, vars: &[&str], gens: &[&str]) -> AffinePresentation {
    let ring = PolyRing::new(field.clone(), vars, MonomialOrder::GrevLex);
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(&ring, g).unwrap())
        .collect();
    AffinePresentation::new(&ring, gens).unwrap()
}

fn spec(x: &AffinePresentation, tower: Option<&[&str]>) -> PointSpec {
    match tower {
        None => PointSpec::Generic,
        Some(t) => PointSpec::Closed(
            t.iter()
                .map(|p| parse_polynomial(x.ring(), p).unwrap())
                .collect(),
        ),
    }
}

fn absolute(field: &Field, vars: &[&str], gens: &[&str], tower: Option<&[&str]>) -> Problem {
    let x = scheme(field, vars, gens);
    Problem {
        point_x: spec(&x, tower),
        point_s: PointSpec::Closed(Vec::new()),
        morphism: Morphism::absolute(x),
        options: ResolveOptions::default(),
    }
}

fn relative(
    field: &Field,
    (xv, xg, xt): (&[&str], &[&str], Option<&[&str]>),
    (sv, sg, st): (&[&str], &[&str], Option<&[&str]>),
    map: &[&str],
) -> Problem {
    let x = scheme(field, xv, xg);
    let s = scheme(field, sv, sg);
    let pullbacks = map
        .iter()
        .map(|g| parse_polynomial(x.ring(), g).unwrap())
        .collect();
    Problem {
        point_x: spec(&x, xt),
        point_s: spec(&s, st),
        morphism: Morphism::new(x, s, pullbacks).unwrap(),
        options: ResolveOptions::default(),
    }
}

fn run(p: &Problem) -> ComparisonReport {
    let r = analyze(p).unwrap();
    assert!(r.violations().is_empty(), "{:?}", r.violations());
    r
}

fn dims(r: &ComparisonReport) -> (usize, usize, usize, usize) {
    (
        r.dim_zariski,
        r.dim_grothendieck,
        r.dim_zariski_relative,
        r.dim_fiber_tangent,
    )
}

#[test]
fn generic_point_of_the_line_over_q() {
    let q = Field::rationals();
    let r = run(&absolute(&q, &["t"], &[], None));
    assert_eq!(dims(&r), (0, 1, 0, 0));
    assert!(!r.phi.iso && !r.phi.injective);
    assert_eq!(r.phi.rank, 0);
    assert!(!r.theta.iso);
    assert_eq!((r.theta.source_dim, r.theta.target_dim), (0, 1));
    assert!(!r.extension.algebraic);
    assert_eq!(r.extension.separable, None);
    assert!(!r.theorem.hypothesis && !r.theorem.conclusion && r.theorem.consistent);
}

#[test]
fn gaussian_point_on_the_line() {
    let q = Field::rationals();
    let r = run(&absolute(&q, &["x"], &[], Some(&["x^2 + 1"])));
    assert_eq!((r.dim_zariski, r.dim_grothendieck), (1, 1));
    assert_eq!(r.cotangent_basis, vec!["x^2 + 1"]);
    // Phi(d/dx)([x^2 + 1]) = 2x evaluated at x.
    assert_eq!(r.phi.matrix, vec![vec!["2*x".to_string()]]);
    assert!(r.phi.iso && r.theta.iso);
    // [(x - i)(x + i)] = 2i [x - i] modulo (x - i)^2, with i printed as x.
    assert_eq!(r.theta.matrix, vec![vec!["2*x".to_string()]]);
    assert!(r.upsilon.defined && r.upsilon.identities_hold);
    // 1 / (2i) = -i/2.
    assert_eq!(r.upsilon.matrix, Some(vec![vec!["-1/2*x".to_string()]]));
    assert!(r.extension.algebraic);
    assert_eq!(r.extension.separable, Some(true));
    assert_eq!(r.extension.gcd_separable, Some(true));
    assert_eq!(r.extension.omega_dim, 0);
    assert_eq!(
        (r.sequences.delta_rank, r.sequences.omega_fiber_dim),
        (1, 1)
    );
    assert!(r.theorem.hypothesis && r.theorem.conclusion);
}

#[test]
fn inseparable_extension_over_f2() {
    let f2 = Field::prime(2).unwrap();
    let r = run(&relative(
        &f2,
        (&["u", "v"], &["v^2 - u"], None),
        (&["u"], &[], None),
        &["u"],
    ));
    assert_eq!(dims(&r), (0, 1, 0, 0));
    assert_eq!(r.extension.omega_dim, 1);
    assert!(r.extension.algebraic);
    assert_eq!(r.extension.separable, Some(false));
    assert_eq!(r.extension.gcd_separable, Some(false));
    assert!(!r.phi.injective && !r.phi.iso);
    assert!(!r.theorem.hypothesis && r.theorem.consistent);
    assert_eq!(r.sequences.delta_rank, 0);
}

#[test]
fn separable_control_over_f3() {
    let f3 = Field::prime(3).unwrap();
    let r = run(&relative(
        &f3,
        (&["u", "v"], &["v^2 - u"], None),
        (&["u"], &[], None),
        &["u"],
    ));
    assert_eq!((r.dim_zariski, r.dim_grothendieck), (0, 0));
    assert!(r.phi.iso);
    assert_eq!(r.extension.separable, Some(true));
    assert_eq!(r.extension.omega_dim, 0);
    assert!(r.theorem.hypothesis && r.theorem.conclusion);
}

#[test]
fn node_at_the_origin() {
    let q = Field::rationals();
    let r = run(&absolute(
        &q,
        &["x", "y"],
        &["y^2 - x^3 - x^2"],
        Some(&["x", "y"]),
    ));
    assert_eq!(dims(&r), (2, 2, 2, 2));
    assert_eq!(r.phi.rank, 2);
    assert!(r.phi.iso && r.theta.iso && r.upsilon.identities_hold);
    assert_eq!(r.cotangent_basis, vec!["x", "y"]);
    assert_eq!(r.phi.matrix, vec![vec!["1", "0"], vec!["0", "1"]]);
    assert_eq!(
        (
            r.sequences.delta_rank,
            r.sequences.omega_fiber_dim,
            r.extension.omega_dim
        ),
        (2, 2, 0)
    );
}

#[test]
fn projection_of_the_plane() {
    let q = Field::rationals();
    let r = run(&relative(
        &q,
        (&["x", "y"], &[], Some(&["x", "y"])),
        (&["y"], &[], Some(&["y"])),
        &["y"],
    ));
    assert_eq!(dims(&r), (2, 1, 1, 1));
    assert_eq!(r.sequences.fiber_derivation_dim, 1);
    assert!(r.sequences.lemma1_ok && r.sequences.lemma2_ok);
    assert_eq!(
        r.derivation_basis,
        vec![vec!["1".to_string(), "0".to_string()]]
    );
    assert!(r.phi.iso && r.theta.iso && r.upsilon.identities_hold);
}

#[test]
fn spectrum_of_the_base_field() {
    let q = Field::rationals();
    let r = run(&absolute(&q, &[], &[], Some(&[])));
    assert_eq!(dims(&r), (0, 0, 0, 0));
    assert!(r.phi.iso && r.theta.iso && r.upsilon.identities_hold);
    assert!(r.theorem.hypothesis && r.theorem.consistent);
}

#[test]
fn cube_root_tower_over_f7() {
    // x^3 - 2 is irreducible over F_7 since 2 is not a cube there.
    let f7 = Field::prime(7).unwrap();
    let r = run(&absolute(
        &f7,
        &["x", "y"],
        &["y - x^2"],
        Some(&["x^3 - 2", "y - x^2"]),
    ));
    assert_eq!((r.dim_zariski, r.dim_grothendieck), (1, 1));
    assert!(r.phi.iso && r.theta.iso);
    assert_eq!(r.extension.separable, Some(true));
}

#[test]
fn reducible_tower_step_is_rejected() {
    let q = Field::rationals();
    let err = analyze(&absolute(&q, &["x"], &[], Some(&["x^2 - 1"]))).unwrap_err();
    assert!(matches!(err, Error::ReducibleTowerStep { .. }));
    assert!(err.to_string().contains("ZeroDivisorWitness"));
}
