//! The machine-readable report document and its text renderings.

use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};
use tangent_core::tangent::ComparisonReport;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Phi {
    pub rank: usize,
    pub injective: bool,
    pub surjective_onto_relative: bool,
    pub iso: bool,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Theta {
    pub rank: usize,
    pub iso: bool,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Upsilon {
    pub defined: bool,
    pub identities_hold: bool,
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Extension {
    pub algebraic: bool,
    pub separable: Option<bool>,
    pub omega_dim: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SequenceChecks {
    pub seq5_ok: bool,
    pub seq6_ok: bool,
    pub lemma1_ok: bool,
    pub lemma2_ok: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Theorem {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Provenance {
    pub input_sha256: String,
    pub seed: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportDocument {
    pub dim_zariski: usize,
    pub dim_grothendieck: usize,
    pub dim_zariski_relative: usize,
    pub dim_fiber_tangent: usize,
    pub phi: Phi,
    pub theta: Theta,
    pub upsilon: Upsilon,
    pub extension: Extension,
    pub sequence_checks: SequenceChecks,
    pub theorem: Theorem,
    pub violations: Vec<String>,
    pub provenance: Provenance,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl ReportDocument {
    pub fn new(r: &ComparisonReport, input: &str, seed: u64) -> Self {
        Self {
            dim_zariski: r.dim_zariski,
            dim_grothendieck: r.dim_grothendieck,
            dim_zariski_relative: r.dim_zariski_relative,
            dim_fiber_tangent: r.dim_fiber_tangent,
            phi: Phi {
                rank: r.phi.rank,
                injective: r.phi.injective,
                surjective_onto_relative: r.phi.surjective_onto_relative,
                iso: r.phi.iso,
                matrix: r.phi.matrix.clone(),
            },
            theta: Theta {
                rank: r.theta.rank,
                iso: r.theta.iso,
                matrix: r.theta.matrix.clone(),
            },
            upsilon: Upsilon {
                defined: r.upsilon.defined,
                identities_hold: r.upsilon.identities_hold,
                matrix: r.upsilon.matrix.clone(),
            },
            extension: Extension {
                algebraic: r.extension.algebraic,
                separable: r.extension.separable,
                omega_dim: r.extension.omega_dim,
            },
            sequence_checks: SequenceChecks {
                seq5_ok: r.sequences.seq5_ok,
                seq6_ok: r.sequences.seq6_ok,
                lemma1_ok: r.sequences.lemma1_ok,
                lemma2_ok: r.sequences.lemma2_ok,
            },
            theorem: Theorem {
                hypothesis: r.theorem.hypothesis,
                conclusion: r.theorem.conclusion,
                consistent: r.theorem.consistent,
            },
            violations: r.violations(),
            provenance: Provenance {
                input_sha256: sha256_hex(input),
                seed,
                tool_version: TOOL_VERSION.to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix_block(out: &mut String, name: &str, m: &[Vec<String>], cols: usize) {
    let _ = writeln!(out, "{name} ({} x {cols}):", m.len());
    if m.is_empty() || cols == 0 {
        let _ = writeln!(out, "  (empty)");
        return;
    }
    let width = m.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in m {
        let cells = row
            .iter()
            .map(|c| format!("{c:>width$}"))
            .collect::<Vec<_>>();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
}

/// Dimensions table, verdicts and the three matrices.
pub fn render_text(r: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "residue field of x : {}", r.residue_field_x);
    let _ = writeln!(out, "residue field of s : {}", r.residue_field_s);
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<34}dim", "space");
    for (name, d) in [
        ("T_x X (Zariski)", r.dim_zariski),
        ("T^Gro_{X/S}(x) (derivations)", r.dim_grothendieck),
        ("T^Zar_{X/S}(x) (relative)", r.dim_zariski_relative),
        ("T_x X_s (fiber)", r.dim_fiber_tangent),
        ("Omega_{k(x)/k(s)}", r.extension.omega_dim),
    ] {
        let _ = writeln!(out, "{name:<34}{d}");
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Phi   : rank {}, injective {}, onto T^Zar {}, iso {}",
        r.phi.rank,
        yes(r.phi.injective),
        yes(r.phi.surjective_onto_relative),
        yes(r.phi.iso)
    );
    let _ = writeln!(
        out,
        "theta : rank {}, iso {}",
        r.theta.rank,
        yes(r.theta.iso)
    );
    let _ = writeln!(
        out,
        "Upsilon: defined {}, identities {}",
        yes(r.upsilon.defined),
        yes(r.upsilon.identities_hold)
    );
    let sep = match r.extension.separable {
        Some(b) => yes(b),
        None => "undefined",
    };
    let _ = writeln!(
        out,
        "extension: algebraic {}, separable {sep}",
        yes(r.extension.algebraic)
    );
    let s = &r.sequences;
    let _ = writeln!(
        out,
        "checks: seq5 {} (rank delta {} + {} = {}), seq6 {}, lemma1 {}, lemma2 {}",
        yes(s.seq5_ok),
        s.delta_rank,
        r.extension.omega_dim,
        s.omega_fiber_dim,
        yes(s.seq6_ok),
        yes(s.lemma1_ok),
        yes(s.lemma2_ok)
    );
    let t = &r.theorem;
    let _ = writeln!(
        out,
        "theorem: hypothesis {}, conclusion {}, consistent {}",
        yes(t.hypothesis),
        yes(t.conclusion),
        yes(t.consistent)
    );
    let _ = writeln!(out);
    matrix_block(&mut out, "Phi", &r.phi.matrix, r.dim_grothendieck);
    matrix_block(&mut out, "theta", &r.theta.matrix, r.theta.source_dim);
    if let Some(u) = &r.upsilon.matrix {
        matrix_block(&mut out, "Upsilon", u, r.dim_zariski);
    }
    out
}

/// Everything in [`render_text`] plus the chosen bases.
pub fn render_explain(r: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "coordinates of x: ({})", r.coords_x.join(", "));
    let _ = writeln!(out, "cotangent basis of M_x/M_x^2:");
    if r.cotangent_basis.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (k, m) in r.cotangent_basis.iter().enumerate() {
        let _ = writeln!(out, "  m{} = [{}]", k + 1, m);
    }
    let _ = writeln!(out, "pulled-back generators of M_s:");
    if r.pulled_back.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for q in &r.pulled_back {
        let _ = writeln!(out, "  {q}");
    }
    let _ = writeln!(out, "derivation basis (values on x_1..x_n):");
    if r.derivation_basis.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (k, d) in r.derivation_basis.iter().enumerate() {
        let _ = writeln!(out, "  D{} = ({})", k + 1, d.join(", "));
    }
    let _ = writeln!(out, "T^Zar basis (dual coordinates on m1..):");
    if r.relative_basis.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for (k, v) in r.relative_basis.iter().enumerate() {
        let _ = writeln!(out, "  v{} = ({})", k + 1, v.join(", "));
    }
    let _ = writeln!(out);
    out.push_str(&render_text(r));
    out
}
