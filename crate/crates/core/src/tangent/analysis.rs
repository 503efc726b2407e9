use crate::arith::{Field, Value};
use crate::error::{Error, Result};
use crate::scheme::{verify_image, Fiber, Morphism, PointSpec, ResolveOptions, ResolvedPoint};

use super::derivation::stack;
use super::{
    jacobian_at, BaseChangeAlgebra, CotangentSpace, DerivationSpace, ExtensionClass, PhiMap,
    RelativeTangent, ThetaMap, UpsilonMap,
};

/// A morphism `f: X -> S` with points `x` and `s = f(x)`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub morphism: Morphism,
    pub point_x: PointSpec,
    pub point_s: PointSpec,
    pub options: ResolveOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSummary {
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub injective: bool,
    pub surjective_onto_relative: bool,
    pub iso: bool,
    pub columns_in_relative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSummary {
    pub matrix: Vec<Vec<String>>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonSummary {
    pub defined: bool,
    pub identities_hold: bool,
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceChecks {
    /// Rank of `M_x / M_x^2 -> Omega_fiber (x) kappa(x)`.
    pub delta_rank: usize,
    pub omega_fiber_dim: usize,
    pub seq5_ok: bool,
    pub base_change_cotangent_dim: usize,
    pub base_change_omega_dim: usize,
    pub seq6_ok: bool,
    pub lemma1_ok: bool,
    pub fiber_derivation_dim: usize,
    pub lemma2_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub consistent: bool,
    /// `theta` iso implies `Phi` iso with both `Upsilon` compositions the
    /// identity.
    pub main_lemma_ok: bool,
}

/// Every dimension, map and verdict computed for one [`Problem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub nvars: usize,
    pub residue_field_x: String,
    pub residue_field_s: String,
    pub coords_x: Vec<String>,
    pub dim_zariski: usize,
    pub dim_grothendieck: usize,
    pub dim_zariski_relative: usize,
    pub dim_fiber_tangent: usize,
    pub cotangent_basis: Vec<String>,
    pub derivation_basis: Vec<Vec<String>>,
    pub relative_basis: Vec<Vec<String>>,
    pub pulled_back: Vec<String>,
    pub phi: PhiSummary,
    pub theta: ThetaSummary,
    pub upsilon: UpsilonSummary,
    pub extension: ExtensionClass,
    pub sequences: SequenceChecks,
    pub theorem: TheoremVerdict,
}

impl ComparisonReport {
    /// Descriptions of every failed consistency check.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut flag = |ok: bool, msg: &str| {
            if !ok {
                out.push(msg.to_string());
            }
        };
        flag(
            self.phi.columns_in_relative,
            "a column of Phi is not in T^Zar",
        );
        flag(
            self.dim_zariski_relative == self.dim_fiber_tangent && self.sequences.lemma1_ok,
            "T^Zar and the fiber tangent space differ in dimension",
        );
        flag(
            self.sequences.lemma2_ok,
            "T^Gro of X/S and of the fiber disagree",
        );
        flag(
            self.theorem.main_lemma_ok,
            "theta is iso but Phi or Upsilon fails",
        );
        flag(
            self.theorem.consistent,
            "extension is algebraic and separable but Phi is not an isomorphism",
        );
        flag(
            self.sequences.seq5_ok,
            "rank identity of the conormal sequence fails",
        );
        flag(
            self.sequences.seq6_ok,
            "cotangent and Omega of the base change differ",
        );
        if self.upsilon.defined {
            flag(
                self.upsilon.identities_hold,
                "an Upsilon composition is not the identity",
            );
        }
        out
    }

    pub fn verify(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvariantViolation(v.join("; ")))
        }
    }
}

fn vector_strings(field: &Field, v: &[Value]) -> Vec<String> {
    v.iter().map(|e| field.value_to_string(e)).collect()
}

/// Runs every tangent computation for `problem` without judging the
/// outcome; see [`ComparisonReport::verify`].
pub fn analyze(problem: &Problem) -> Result<ComparisonReport> {
    let f = &problem.morphism;
    let x = ResolvedPoint::resolve(f.source(), &problem.point_x, problem.options)?;
    let s = ResolvedPoint::resolve(f.target(), &problem.point_s, problem.options)?;
    let ix = verify_image(f, &x, &s)?;
    let fiber = Fiber::build(f, &x, &s)?;
    let kappa = x.residue().clone();
    let n = f.source().nvars();

    let c = CotangentSpace::compute(&x)?;
    let d = DerivationSpace::compute(f, &x)?;
    let r = RelativeTangent::compute(f, &s, &c)?;
    let phi = PhiMap::compute(&d, &c, &r)?;

    let reduced_scheme = f.source().with_extra(r.pulled_back())?;
    let reduced_point = x.on_subscheme(&reduced_scheme)?;
    let reduced = CotangentSpace::compute(&reduced_point)?;
    let b = BaseChangeAlgebra::build(f, &x, &s, &ix)?;
    let theta = ThetaMap::compute(&reduced, &b)?;
    let upsilon = if theta.is_iso() {
        Some(UpsilonMap::compute(&theta, &reduced, &b, &c, &r, &d, &phi)?)
    } else {
        None
    };

    let fiber_cotangent = CotangentSpace::compute(fiber.point())?;
    let fiber_der = DerivationSpace::from_polys(fiber.presentation().gb().polys(), fiber.point())?;
    let mut lemma2_ok = fiber_der.dim() == d.dim();
    for dv in d.basis() {
        let moved = dv
            .iter()
            .map(|v| fiber.transport(&x, v))
            .collect::<Result<Vec<_>>>()?;
        lemma2_ok &= fiber_der.contains(&moved)?;
    }

    let extension = ExtensionClass::classify(&x, &s, &fiber)?;

    let stacked = d.constraints();
    let stacked_rank = stacked.rank()?;
    let with_gradients = stack(&kappa, stacked, phi.gradients());
    let delta_rank = with_gradients.rank()? - stacked_rank;
    let omega_fiber_dim = n - stacked_rank;
    let seq5_ok = delta_rank + extension.omega_dim == omega_fiber_dim;

    let b_jac = jacobian_at(b.presentation().gb().polys(), b.point())?;
    let base_change_omega_dim = n - b_jac.rank()?;
    let base_change_cotangent_dim = b.cotangent().dim();
    let seq6_ok = base_change_cotangent_dim == base_change_omega_dim;
    let lemma1_ok = r.dim() == fiber_cotangent.dim();

    let upsilon_ok = upsilon.as_ref().is_some_and(|u| u.identities_hold());
    let hypothesis = extension.algebraic && extension.separable == Some(true);
    let conclusion = phi.is_iso();
    let theorem = TheoremVerdict {
        hypothesis,
        conclusion,
        consistent: !hypothesis || conclusion,
        main_lemma_ok: !theta.is_iso() || (phi.is_iso() && upsilon_ok),
    };

    let kstr = |v: &[Value]| vector_strings(&kappa, v);
    Ok(ComparisonReport {
        nvars: n,
        residue_field_x: format!("{:?}", x.residue()),
        residue_field_s: format!("{:?}", s.residue()),
        coords_x: kstr(x.coords()),
        dim_zariski: c.dim(),
        dim_grothendieck: d.dim(),
        dim_zariski_relative: r.dim(),
        dim_fiber_tangent: fiber_cotangent.dim(),
        cotangent_basis: c.basis().iter().map(|p| p.to_string()).collect(),
        derivation_basis: d.basis().iter().map(|v| kstr(v)).collect(),
        relative_basis: r.annihilator().iter().map(|v| kstr(v)).collect(),
        pulled_back: r.pulled_back().iter().map(|p| p.to_string()).collect(),
        phi: PhiSummary {
            matrix: phi.matrix().to_strings(),
            rank: phi.rank(),
            injective: phi.injective(),
            surjective_onto_relative: phi.surjective_onto_relative(),
            iso: phi.is_iso(),
            columns_in_relative: phi.columns_in_relative(),
        },
        theta: ThetaSummary {
            matrix: theta.matrix().to_strings(),
            source_dim: reduced.dim(),
            target_dim: b.cotangent().dim(),
            rank: theta.rank(),
            iso: theta.is_iso(),
        },
        upsilon: UpsilonSummary {
            defined: upsilon.is_some(),
            identities_hold: upsilon_ok,
            matrix: upsilon.as_ref().map(|u| u.matrix().to_strings()),
        },
        extension,
        sequences: SequenceChecks {
            delta_rank,
            omega_fiber_dim,
            seq5_ok,
            base_change_cotangent_dim,
            base_change_omega_dim,
            seq6_ok,
            lemma1_ok,
            fiber_derivation_dim: fiber_der.dim(),
            lemma2_ok,
        },
        theorem,
    })
}
