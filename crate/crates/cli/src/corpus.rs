//! Bundled example problems and the seeded random property suite.

use std::collections::BTreeMap;
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tangent_core::arith::Field;
use tangent_core::groebner::GroebnerBasis;
use tangent_core::poly::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use tangent_core::tangent::{analyze, ComparisonReport};

use crate::file::{BaseSpec, Options, PointKindSpec, PointSection, ProblemFile, SchemeSection};

pub struct PaperCase {
    pub name: &'static str,
    pub text: &'static str,
    pub check: fn(&ComparisonReport) -> Result<(), String>,
}

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn dims(r: &ComparisonReport) -> (usize, usize, usize, usize) {
    (
        r.dim_zariski,
        r.dim_grothendieck,
        r.dim_zariski_relative,
        r.dim_fiber_tangent,
    )
}

fn check_line_generic(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (0, 1, 0, 0), "dims (0, 1, 0, 0)")?;
    expect(!r.phi.iso && !r.theta.iso, "Phi and theta not iso")?;
    expect(
        !r.extension.algebraic && r.extension.separable.is_none(),
        "transcendental",
    )?;
    expect(
        !r.theorem.hypothesis && r.theorem.consistent,
        "hypothesis fails, consistent",
    )
}

fn check_gaussian(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (1, 1, 1, 1), "dims (1, 1, 1, 1)")?;
    expect(r.phi.matrix == vec![vec!["2*x".to_string()]], "Phi = (2x)")?;
    expect(r.phi.iso && r.theta.iso, "Phi and theta iso")?;
    expect(
        r.upsilon.defined && r.upsilon.identities_hold,
        "Upsilon inverts Phi",
    )?;
    expect(
        r.extension.algebraic && r.extension.separable == Some(true),
        "algebraic and separable",
    )
}

fn check_node(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (2, 2, 2, 2), "dims (2, 2, 2, 2)")?;
    let id = vec![
        vec!["1".to_string(), "0".to_string()],
        vec!["0".to_string(), "1".to_string()],
    ];
    expect(r.phi.matrix == id, "Phi is the identity")?;
    expect(
        r.sequences.delta_rank == 2
            && r.sequences.omega_fiber_dim == 2
            && r.extension.omega_dim == 0,
        "rank identity 2 = 2 - 0",
    )?;
    expect(
        r.phi.iso && r.theta.iso && r.upsilon.identities_hold,
        "all maps iso",
    )
}

fn check_plane(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (2, 1, 1, 1), "dims (2, 1, 1, 1)")?;
    expect(
        r.sequences.fiber_derivation_dim == 1,
        "fiber derivations of dim 1",
    )?;
    expect(r.phi.iso, "Phi iso onto T^Zar")
}

fn check_f2(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (0, 1, 0, 0), "dims (0, 1, 0, 0)")?;
    expect(r.extension.omega_dim == 1, "Omega of dim 1")?;
    expect(
        r.extension.algebraic && r.extension.separable == Some(false),
        "algebraic, inseparable",
    )?;
    expect(
        !r.phi.injective && r.theorem.consistent,
        "Phi not injective, consistent",
    )
}

fn check_f3(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (0, 0, 0, 0), "dims (0, 0, 0, 0)")?;
    expect(r.phi.iso, "Phi iso")?;
    expect(r.extension.separable == Some(true), "separable")
}

fn check_base_point(r: &ComparisonReport) -> Result<(), String> {
    expect(dims(r) == (0, 0, 0, 0), "dims (0, 0, 0, 0)")?;
    expect(
        r.phi.iso && r.theta.iso && r.upsilon.identities_hold,
        "empty maps are iso",
    )
}

pub fn paper_cases() -> Vec<PaperCase> {
    vec![
        PaperCase {
            name: "line_generic",
            text: include_str!("../corpus/paper/line_generic.tan"),
            check: check_line_generic,
        },
        PaperCase {
            name: "gaussian_point",
            text: include_str!("../corpus/paper/gaussian_point.tan"),
            check: check_gaussian,
        },
        PaperCase {
            name: "node",
            text: include_str!("../corpus/paper/node.tan"),
            check: check_node,
        },
        PaperCase {
            name: "plane_over_line",
            text: include_str!("../corpus/paper/plane_over_line.tan"),
            check: check_plane,
        },
        PaperCase {
            name: "f2_inseparable",
            text: include_str!("../corpus/paper/f2_inseparable.tan"),
            check: check_f2,
        },
        PaperCase {
            name: "f3_separable",
            text: include_str!("../corpus/paper/f3_separable.tan"),
            check: check_f3,
        },
        PaperCase {
            name: "base_point",
            text: include_str!("../corpus/paper/base_point.tan"),
            check: check_base_point,
        },
    ]
}

fn analyze_text(text: &str) -> Result<ComparisonReport, String> {
    let file: ProblemFile = text.parse().map_err(|e| format!("{e}"))?;
    let problem = file.to_problem().map_err(|e| format!("{e:?}"))?;
    analyze(&problem).map_err(|e| e.to_string())
}

/// Runs every bundled case; returns the summary text and the failure count.
pub fn run_paper() -> (String, usize) {
    let mut out = String::new();
    let cases = paper_cases();
    let mut failures = 0;
    for case in &cases {
        let verdict = analyze_text(case.text).and_then(|r| {
            let v = r.violations();
            if !v.is_empty() {
                return Err(v.join("; "));
            }
            (case.check)(&r).map_err(|e| format!("expected {e}"))
        });
        match verdict {
            Ok(()) => {
                let _ = writeln!(out, "PASS {}", case.name);
            }
            Err(e) => {
                failures += 1;
                let _ = writeln!(out, "FAIL {}: {e}", case.name);
            }
        }
    }
    let _ = writeln!(
        out,
        "paper corpus: {}/{} passed",
        cases.len() - failures,
        cases.len()
    );
    (out, failures)
}

/// One generated problem.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: usize,
    pub label: String,
    pub file: ProblemFile,
}

/// Names of the checked invariants, in report order.
pub const INVARIANTS: [&str; 7] = [
    "lemma1",
    "lemma2",
    "phi_columns",
    "main_lemma",
    "theorem",
    "seq5",
    "seq6",
];

#[derive(Clone, Debug)]
pub struct InstanceOutcome {
    pub id: usize,
    pub label: String,
    pub line: String,
    pub violations: Vec<&'static str>,
    pub error: Option<String>,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.error.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct RandomSummary {
    pub seed: u64,
    pub outcomes: Vec<InstanceOutcome>,
}

impl RandomSummary {
    pub fn violation_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut counts = INVARIANTS
            .iter()
            .map(|&k| (k, 0))
            .collect::<BTreeMap<_, _>>();
        for o in &self.outcomes {
            for v in &o.violations {
                *counts.entry(v).or_default() += 1;
            }
        }
        counts
    }

    pub fn errors(&self) -> usize {
        self.outcomes.iter().filter(|o| o.error.is_some()).count()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed()).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let _ = writeln!(out, "{}", o.line);
        }
        let counts = self.violation_counts();
        let parts = counts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>();
        let _ = writeln!(out, "violations: {}", parts.join(" "));
        let _ = writeln!(
            out,
            "random corpus (seed {}): {}/{} passed, {} errors",
            self.seed,
            self.outcomes.len() - self.failures(),
            self.outcomes.len(),
            self.errors()
        );
        out
    }
}

const NAMES: [&str; 3] = ["x", "y", "z"];

fn irreducible_catalogue(base: BaseSpec) -> &'static [&'static str] {
    match base {
        BaseSpec::Rationals => &["t^2 + 1", "t^2 - 2", "t^3 - 2", "t^2 + t + 1"],
        BaseSpec::Prime(2) => &["t^2 + t + 1", "t^3 + t + 1", "t^3 + t^2 + 1"],
        BaseSpec::Prime(3) => &["t^2 + 1", "t^3 - t - 1", "t^2 + t + 2"],
        BaseSpec::Prime(_) => &["t^2 + 2", "t^3 + t + 1", "t^2 + t + 1"],
    }
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    vars: &[usize],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let field = ring.field();
    let nterms = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let mut exps = vec![0u32; ring.nvars()];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            if let Some(&v) = vars.choose(rng) {
                exps[v] += 1;
            }
        }
        let c = rng.gen_range(-3i64..=3);
        terms.push((Monomial::new(exps), field.from_i64(c)));
    }
    Polynomial::from_terms(ring, terms).expect("well-formed terms")
}

fn lower(i: usize) -> Vec<usize> {
    (0..i).collect()
}

/// A random element of the ideal of the point: `r - NF(r)`.
fn ideal_element(rng: &mut ChaCha8Rng, gb: &GroebnerBasis, vars: &[usize]) -> Polynomial {
    let r = random_poly(rng, gb.ring(), vars, 3, 3);
    r.sub(&gb.normal_form(&r).expect("normal form"))
        .expect("same ring")
}

struct ClosedDraft {
    ring: Ring,
    tower: Vec<Polynomial>,
    gb: GroebnerBasis,
    /// Index of the step of degree > 1, if any.
    nonlinear: Option<usize>,
    catalogue_poly: &'static str,
}

fn closed_draft(rng: &mut ChaCha8Rng, base: BaseSpec, field: &Field, n: usize) -> ClosedDraft {
    let ring = PolyRing::new(field.clone(), &NAMES[..n], MonomialOrder::GrevLex);
    let nonlinear = if rng.gen_bool(0.7) {
        Some(rng.gen_range(0..n))
    } else {
        None
    };
    let catalogue_poly = *irreducible_catalogue(base).choose(rng).expect("nonempty");
    let t_ring = PolyRing::new(field.clone(), &["t"], MonomialOrder::Lex);
    let p = parse_polynomial(&t_ring, catalogue_poly).expect("catalogue parses");
    let mut tower = Vec::with_capacity(n);
    for i in 0..n {
        let xi = Polynomial::var(&ring, i);
        let step = if nonlinear == Some(i) {
            let shift = if i > 0 && rng.gen_bool(0.5) {
                random_poly(rng, &ring, &lower(i), 1, 2)
            } else {
                Polynomial::zero(&ring)
            };
            p.compose(&ring, &[xi.sub(&shift).expect("same ring")])
                .expect("compose")
        } else {
            let shift = if i > 0 {
                random_poly(rng, &ring, &lower(i), 2, 2)
            } else {
                Polynomial::constant(&ring, field.from_i64(rng.gen_range(-2..=2)))
            };
            xi.sub(&shift).expect("same ring")
        };
        tower.push(step);
    }
    let gb = GroebnerBasis::compute(&ring, &tower).expect("tower basis");
    ClosedDraft {
        ring,
        tower,
        gb,
        nonlinear,
        catalogue_poly,
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn scheme_gens(rng: &mut ChaCha8Rng, gb: &GroebnerBasis, n: usize) -> Vec<Polynomial> {
    let k = rng.gen_range(0..=2);
    (0..k)
        .map(|_| ideal_element(rng, gb, &lower(n)))
        .filter(|h| !h.is_zero())
        .collect()
}

fn closed_instance(
    rng: &mut ChaCha8Rng,
    base: BaseSpec,
    field: &Field,
    relative: bool,
) -> (String, ProblemFile) {
    let n = rng.gen_range(1..=3);
    let d = closed_draft(rng, base, field, n);
    let x_gens = scheme_gens(rng, &d.gb, n);
    let x = SchemeSection {
        vars: NAMES[..n].iter().map(|s| s.to_string()).collect(),
        ideal: strings(&x_gens),
    };
    let point_x = PointSection {
        kind: PointKindSpec::Closed,
        tower: strings(&d.tower),
    };
    let degree = d.gb.staircase().expect("zero-dimensional").len();
    let mut file = ProblemFile {
        base,
        s: None,
        x,
        map: Vec::new(),
        point_x,
        point_s: None,
        options: Options::default(),
    };
    if !relative {
        return (format!("n={n} absolute closed deg {degree}"), file);
    }
    let s_ring = PolyRing::new(field.clone(), &["u", "w"], MonomialOrder::GrevLex);
    let projecting = d.nonlinear == Some(0) && rng.gen_bool(0.6);
    let m = if projecting { 1 } else { rng.gen_range(1..=2) };
    let s_vars = ["u", "w"][..m]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>();
    let mut map = Vec::new();
    let mut s_tower = Vec::new();
    for (j, y) in s_vars.iter().enumerate() {
        let h = ideal_element(rng, &d.gb, &lower(n));
        if projecting {
            let g = Polynomial::var(&d.ring, 0).add(&h).expect("same ring");
            map.push((y.clone(), g.to_string()));
            s_tower.push(d.catalogue_poly.replace('t', y));
        } else {
            let c = field.from_i64(rng.gen_range(-2..=2));
            let g = h
                .add(&Polynomial::constant(&d.ring, c.clone()))
                .expect("same ring");
            map.push((y.clone(), g.to_string()));
            let step = Polynomial::var(&s_ring, j)
                .sub(&Polynomial::constant(&s_ring, c))
                .expect("same ring");
            s_tower.push(step.to_string());
        }
    }
    file.s = Some(SchemeSection {
        vars: s_vars,
        ideal: Vec::new(),
    });
    file.map = map;
    file.point_s = Some(PointSection {
        kind: PointKindSpec::Closed,
        tower: s_tower,
    });
    let how = if projecting {
        "projection"
    } else {
        "rational image"
    };
    (
        format!("n={n} relative closed deg {degree} m={m} {how}"),
        file,
    )
}

fn generic_instance(rng: &mut ChaCha8Rng, base: BaseSpec, field: &Field) -> (String, ProblemFile) {
    let n = rng.gen_range(1..=3);
    let ring = PolyRing::new(field.clone(), &NAMES[..n], MonomialOrder::GrevLex);
    let graph = n >= 2 && rng.gen_bool(0.5);
    let ideal = if graph {
        let h = random_poly(rng, &ring, &(1..n).collect::<Vec<_>>(), 2, 3);
        vec![Polynomial::var(&ring, 0).sub(&h).expect("same ring")]
    } else {
        Vec::new()
    };
    let gb = GroebnerBasis::compute(&ring, &ideal).expect("basis");
    let x = SchemeSection {
        vars: NAMES[..n].iter().map(|s| s.to_string()).collect(),
        ideal: strings(&ideal),
    };
    let point_x = PointSection {
        kind: PointKindSpec::Generic,
        tower: Vec::new(),
    };
    let mut file = ProblemFile {
        base,
        s: None,
        x,
        map: Vec::new(),
        point_x,
        point_s: None,
        options: Options::default(),
    };
    let shape = if graph { "graph" } else { "space" };
    match rng.gen_range(0..3) {
        0 => (format!("n={n} absolute generic {shape}"), file),
        1 => {
            let g = loop {
                let g = random_poly(rng, &ring, &lower(n), 3, 3);
                if !gb.normal_form(&g).expect("normal form").is_constant() {
                    break g;
                }
            };
            file.s = Some(SchemeSection {
                vars: vec!["u".into()],
                ideal: Vec::new(),
            });
            file.map = vec![("u".into(), g.to_string())];
            file.point_s = Some(PointSection {
                kind: PointKindSpec::Generic,
                tower: Vec::new(),
            });
            (format!("n={n} relative generic {shape} dominant"), file)
        }
        _ => {
            let c = rng.gen_range(-2i64..=2);
            file.s = Some(SchemeSection {
                vars: vec!["u".into()],
                ideal: Vec::new(),
            });
            let cs = Polynomial::constant(&ring, field.from_i64(c)).to_string();
            file.map = vec![("u".into(), cs.clone())];
            file.point_s = Some(PointSection {
                kind: PointKindSpec::Closed,
                tower: vec![format!("u - ({cs})")],
            });
            (format!("n={n} relative generic {shape} constant"), file)
        }
    }
}

fn radical_instance(rng: &mut ChaCha8Rng, base: BaseSpec) -> (String, ProblemFile) {
    let k = match base {
        BaseSpec::Prime(2) => *[2u32, 3].choose(rng).expect("nonempty"),
        BaseSpec::Prime(3) => *[2u32, 3].choose(rng).expect("nonempty"),
        _ => 2,
    };
    let file = ProblemFile {
        base,
        s: Some(SchemeSection {
            vars: vec!["u".into()],
            ideal: Vec::new(),
        }),
        x: SchemeSection {
            vars: vec!["u".into(), "v".into()],
            ideal: vec![format!("v^{k} - u")],
        },
        map: vec![("u".into(), "u".into())],
        point_x: PointSection {
            kind: PointKindSpec::Generic,
            tower: Vec::new(),
        },
        point_s: Some(PointSection {
            kind: PointKindSpec::Generic,
            tower: Vec::new(),
        }),
        options: Options::default(),
    };
    (format!("radical v^{k} = u generic"), file)
}

/// Generates `count` instances from `seed`; the list depends only on the two
/// arguments.
pub fn generate(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = [
        BaseSpec::Rationals,
        BaseSpec::Prime(2),
        BaseSpec::Prime(3),
        BaseSpec::Prime(5),
    ];
    (0..count)
        .map(|id| {
            let base = *bases.choose(&mut rng).expect("nonempty");
            let field = base.field().expect("catalogued base");
            let (shape, mut file) = match rng.gen_range(0..10) {
                0..=2 => closed_instance(&mut rng, base, &field, false),
                3..=5 => closed_instance(&mut rng, base, &field, true),
                6..=8 => generic_instance(&mut rng, base, &field),
                _ => radical_instance(&mut rng, base),
            };
            file.options.order = if rng.gen_bool(0.5) {
                MonomialOrder::GrevLex
            } else {
                MonomialOrder::Lex
            };
            file.options.seed = rng.gen();
            Instance {
                id,
                label: format!("{base} {shape} {}", file.options.order),
                file,
            }
        })
        .collect()
}

fn report_violations(r: &ComparisonReport) -> Vec<&'static str> {
    let checks = [
        r.dim_zariski_relative == r.dim_fiber_tangent && r.sequences.lemma1_ok,
        r.sequences.lemma2_ok,
        r.phi.columns_in_relative,
        r.theorem.main_lemma_ok,
        r.theorem.consistent,
        r.sequences.seq5_ok,
        r.sequences.seq6_ok,
    ];
    INVARIANTS
        .iter()
        .zip(checks)
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect()
}

pub fn run_instance(inst: &Instance) -> InstanceOutcome {
    let text = inst.file.to_string();
    let head = format!("#{:03} {}", inst.id, inst.label);
    match analyze_text(&text) {
        Ok(r) => {
            let violations = report_violations(&r);
            let verdict = if violations.is_empty() {
                "ok".to_string()
            } else {
                format!("VIOLATED {}", violations.join(","))
            };
            let sep = match r.extension.separable {
                Some(true) => "sep",
                Some(false) => "insep",
                None => "-",
            };
            let line = format!(
                "{head}: dims {}/{}/{}/{} phi_iso={} theta_iso={} alg={} {sep} {verdict}",
                r.dim_zariski,
                r.dim_grothendieck,
                r.dim_zariski_relative,
                r.dim_fiber_tangent,
                r.phi.iso,
                r.theta.iso,
                r.extension.algebraic,
            );
            InstanceOutcome {
                id: inst.id,
                label: inst.label.clone(),
                line,
                violations,
                error: None,
            }
        }
        Err(e) => InstanceOutcome {
            id: inst.id,
            label: inst.label.clone(),
            line: format!("{head}: ERROR {e}"),
            violations: Vec::new(),
            error: Some(e),
        },
    }
}

pub fn run_random(seed: u64, count: usize) -> RandomSummary {
    let instances = generate(seed, count);
    let mut outcomes = instances.par_iter().map(run_instance).collect::<Vec<_>>();
    outcomes.sort_by_key(|o| o.id);
    RandomSummary { seed, outcomes }
}
