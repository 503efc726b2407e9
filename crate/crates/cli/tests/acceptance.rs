//! One pass/fail line per acceptance criterion, with timings.

use std::process::Command;
use std::time::{Duration, Instant};

use tangent_cli::corpus::run_random;
use tangent_cli::file::ProblemFile;
use tangent_core::tangent::{analyze, ComparisonReport};

fn corpus_path(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn report(name: &str) -> ComparisonReport {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    let file: ProblemFile = text.parse().unwrap();
    analyze(&file.to_problem().unwrap()).unwrap()
}

fn dims(r: &ComparisonReport) -> (usize, usize, usize, usize) {
    (
        r.dim_zariski,
        r.dim_grothendieck,
        r.dim_zariski_relative,
        r.dim_fiber_tangent,
    )
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

fn check(cond: bool, detail: String) -> Result<String, String> {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1() -> Result<String, String> {
    let r = report("paper/line_generic.tan");
    check(
        r.dim_grothendieck == 1
            && r.dim_zariski_relative == 0
            && !r.phi.iso
            && r.violations().is_empty(),
        format!(
            "T^Gro {} T^Zar {} phi.iso {}",
            r.dim_grothendieck, r.dim_zariski_relative, r.phi.iso
        ),
    )
}

fn c2() -> Result<String, String> {
    let r = report("paper/gaussian_point.tan");
    let ok = (r.dim_zariski, r.dim_grothendieck) == (1, 1)
        && r.phi.iso
        && r.theta.iso
        && r.upsilon.defined
        && r.upsilon.identities_hold
        && r.extension.algebraic
        && r.extension.separable == Some(true)
        && r.violations().is_empty();
    check(
        ok,
        format!(
            "dims ({}, {}) phi {:?} theta.iso {} upsilon {} separable {:?}",
            r.dim_zariski,
            r.dim_grothendieck,
            r.phi.matrix,
            r.theta.iso,
            r.upsilon.identities_hold,
            r.extension.separable
        ),
    )
}

fn c3() -> Result<String, String> {
    let r = report("paper/f2_inseparable.tan");
    let ok = r.dim_grothendieck == 1
        && r.dim_zariski_relative == 0
        && r.extension.omega_dim == 1
        && r.extension.algebraic
        && r.extension.separable == Some(false)
        && !r.phi.injective
        && r.theorem.consistent
        && r.violations().is_empty();
    check(
        ok,
        format!(
            "T^Gro {} T^Zar {} Omega {} separable {:?} injective {} consistent {}",
            r.dim_grothendieck,
            r.dim_zariski_relative,
            r.extension.omega_dim,
            r.extension.separable,
            r.phi.injective,
            r.theorem.consistent
        ),
    )
}

fn c4() -> Result<String, String> {
    let r = report("paper/f3_separable.tan");
    check(
        (r.dim_zariski, r.dim_grothendieck) == (0, 0) && r.phi.iso && r.violations().is_empty(),
        format!(
            "dims ({}, {}) phi.iso {}",
            r.dim_zariski, r.dim_grothendieck, r.phi.iso
        ),
    )
}

fn c5() -> Result<String, String> {
    let r = report("paper/node.tan");
    let identity = vec![
        vec!["1".to_string(), "0".to_string()],
        vec!["0".to_string(), "1".to_string()],
    ];
    let s = &r.sequences;
    let ok = (r.dim_zariski, r.dim_grothendieck) == (2, 2)
        && r.phi.matrix == identity
        && s.delta_rank == 2
        && s.omega_fiber_dim == 2
        && r.extension.omega_dim == 0
        && s.seq5_ok
        && r.violations().is_empty();
    check(
        ok,
        format!(
            "dims ({}, {}) phi {:?} rank identity {} = {} - {}",
            r.dim_zariski,
            r.dim_grothendieck,
            r.phi.matrix,
            s.delta_rank,
            s.omega_fiber_dim,
            r.extension.omega_dim
        ),
    )
}

fn c6() -> Result<String, String> {
    let r = report("paper/plane_over_line.tan");
    let ok = dims(&r) == (2, 1, 1, 1)
        && r.sequences.lemma1_ok
        && r.sequences.lemma2_ok
        && r.sequences.fiber_derivation_dim == 1
        && r.phi.iso
        && r.violations().is_empty();
    check(
        ok,
        format!(
            "dims {:?} fiber T^Gro {} phi.iso {}",
            dims(&r),
            r.sequences.fiber_derivation_dim,
            r.phi.iso
        ),
    )
}

fn c7() -> Result<String, String> {
    let summary = run_random(42, 60);
    let counts = summary.violation_counts();
    let total: usize = counts.values().sum();
    let detail = format!(
        "{} instances, {} errors, violations {:?}",
        summary.outcomes.len(),
        summary.errors(),
        counts
    );
    check(
        summary.outcomes.len() >= 50 && total == 0 && summary.errors() == 0,
        detail,
    )
}

fn c8() -> Result<String, String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tangent"))
            .args(["corpus", "--mode", "random", "--seed", "42"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    check(
        a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty(),
        format!(
            "{} bytes, identical {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn c9() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_tangent"))
        .args(["analyze", &corpus_path("negative/reducible_step.tan")])
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr).trim().to_string();
    check(
        out.status.code() == Some(3) && stderr.contains("ZeroDivisorWitness"),
        format!("exit {:?}: {stderr}", out.status.code()),
    )
}

fn main() {
    let second = Duration::from_secs(1);
    let criteria = [
        Criterion {
            id: 1,
            title: "generic point of the line: T^Gro 1, T^Zar 0",
            budget: second,
            run: c1,
        },
        Criterion {
            id: 2,
            title: "Q(i) point: separable algebraic, all maps iso",
            budget: second,
            run: c2,
        },
        Criterion {
            id: 3,
            title: "v^2 - u over F2: inseparable counterexample",
            budget: second,
            run: c3,
        },
        Criterion {
            id: 4,
            title: "v^2 - u over F3: separable control",
            budget: second,
            run: c4,
        },
        Criterion {
            id: 5,
            title: "node at the origin: Phi identity, rank identity",
            budget: second,
            run: c5,
        },
        Criterion {
            id: 6,
            title: "plane over line: relative closed case",
            budget: second,
            run: c6,
        },
        Criterion {
            id: 7,
            title: "random property suite, seed 42",
            budget: Duration::from_secs(60),
            run: c7,
        },
        Criterion {
            id: 8,
            title: "random corpus output is reproducible",
            budget: Duration::from_secs(120),
            run: c8,
        },
        Criterion {
            id: 9,
            title: "reducible tower step exits 3 with witness",
            budget: Duration::from_secs(10),
            run: c9,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.budget;
        let (verdict, detail) = match &result {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over budget {:?}", c.budget)),
            Err(d) => ("FAIL", d.clone()),
        };
        println!(
            "criterion {}: {verdict} [{:.3}s] {}: {detail}",
            c.id,
            elapsed.as_secs_f64(),
            c.title
        );
        if verdict == "FAIL" {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
