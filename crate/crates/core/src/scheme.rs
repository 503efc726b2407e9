//! Affine presentations, morphisms, points, residue fields and fibers.

use crate::arith::{irreducibility_check, Field, Irreducibility, UniPoly, Value};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

/// `Spec K[vars]/(gens)` over a coefficient field `K`.
#[derive(Clone, Debug)]
pub struct AffinePresentation {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
}

impl AffinePresentation {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        let gb = GroebnerBasis::compute(ring, &gens)?;
        if gb.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(Self {
            ring: ring.clone(),
            gens,
            gb,
        })
    }

    /// `Spec K` itself, with no variables.
    pub fn point(field: &Field) -> Self {
        let ring = PolyRing::new::<&str>(field.clone(), &[], MonomialOrder::GrevLex);
        Self::new(&ring, Vec::new()).expect("the zero ideal is proper")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The closed subscheme cut out by additional equations.
    pub fn with_extra(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        Self::new(&self.ring, gens)
    }
}

/// Pullback data `y_j -> g_j(x)` of a morphism `X -> S`.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: AffinePresentation,
    target: AffinePresentation,
    pullbacks: Vec<Polynomial>,
}

impl Morphism {
    /// Validates that every relation of the target pulls back into the
    /// source ideal.
    pub fn new(
        source: AffinePresentation,
        target: AffinePresentation,
        pullbacks: Vec<Polynomial>,
    ) -> Result<Self> {
        if pullbacks.len() != target.nvars() {
            return Err(Error::InvalidMorphism(format!(
                "{} pullbacks for {} target variables",
                pullbacks.len(),
                target.nvars()
            )));
        }
        if pullbacks.iter().any(|g| !g.ring().same(source.ring())) {
            return Err(Error::InvalidMorphism(
                "pullbacks must be polynomials in the source variables".into(),
            ));
        }
        if !source.field().same(target.field()) {
            return Err(Error::InvalidMorphism(
                "source and target have different base fields".into(),
            ));
        }
        let f = Self {
            source,
            target,
            pullbacks,
        };
        for q in f.target.gens() {
            let pulled = f.pullback(q)?;
            if !f.source.gb().contains(&pulled)? {
                return Err(Error::InvalidMorphism(format!(
                    "relation {q} pulls back to {pulled}, which is not in the source ideal"
                )));
            }
        }
        Ok(f)
    }

    /// Structure morphism `X -> Spec K`.
    pub fn absolute(source: AffinePresentation) -> Self {
        let target = AffinePresentation::point(source.field());
        Self {
            source,
            target,
            pullbacks: Vec::new(),
        }
    }

    pub fn source(&self) -> &AffinePresentation {
        &self.source
    }

    pub fn target(&self) -> &AffinePresentation {
        &self.target
    }

    pub fn pullbacks(&self) -> &[Polynomial] {
        &self.pullbacks
    }

    pub fn is_absolute(&self) -> bool {
        self.target.nvars() == 0
    }

    /// `q(g_1, ..., g_m)` in the source ring.
    pub fn pullback(&self, q: &Polynomial) -> Result<Polynomial> {
        q.compose(self.source.ring(), &self.pullbacks)
    }
}

/// How a point is specified in the input.
#[derive(Clone, Debug)]
pub enum PointSpec {
    /// Triangular generators `p_1(x_1), p_2(x_1, x_2), ...`.
    Closed(Vec<Polynomial>),
    /// The generic point of an integral scheme.
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Closed,
    Generic,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ResolveOptions {
    pub trust_point: bool,
    pub seed: u64,
}

/// How residue-field values are represented.
#[derive(Clone, Debug)]
enum ResidueRepr {
    /// The residue field is the coefficient field itself.
    Coefficient,
    /// A tower ring whose variable `t` is scheme variable `vars[t]`.
    Tower { vars: Vec<usize> },
    /// Fractions of polynomials in the scheme ring.
    Fraction,
}

/// A point together with its residue field and evaluation map.
#[derive(Clone, Debug)]
pub struct ResolvedPoint {
    scheme: AffinePresentation,
    kind: PointKind,
    ideal: GroebnerBasis,
    residue: Field,
    coords: Vec<Value>,
    repr: ResidueRepr,
}

impl ResolvedPoint {
    pub fn resolve(
        scheme: &AffinePresentation,
        spec: &PointSpec,
        opts: ResolveOptions,
    ) -> Result<Self> {
        match spec {
            PointSpec::Closed(tower) => Self::closed_from_tower(scheme, tower, opts),
            PointSpec::Generic => Self::generic(scheme),
        }
    }

    fn closed_from_tower(
        scheme: &AffinePresentation,
        tower: &[Polynomial],
        opts: ResolveOptions,
    ) -> Result<Self> {
        let ring = scheme.ring();
        let n = ring.nvars();
        let field = ring.field().clone();
        if tower.len() > n {
            return Err(Error::InvalidPointSpec(format!(
                "{} tower steps for {n} variables",
                tower.len()
            )));
        }
        let mut steps = Vec::with_capacity(tower.len());
        for (i, p) in tower.iter().enumerate() {
            steps.push(normalize_step(p, i)?);
        }
        if steps.len() < n {
            return Err(Error::NotZeroDimensional);
        }

        // Lex with x_n > ... > x_1 makes the tower a triangular Gröbner basis.
        let rev_names = ring.vars().iter().rev().cloned().collect::<Vec<_>>();
        let lex = PolyRing::new(field.clone(), &rev_names, MonomialOrder::Lex);
        let to_lex = (0..n).map(|i| n - 1 - i).collect::<Vec<_>>();
        let lex_steps = steps
            .iter()
            .map(|p| p.embed(&lex, &to_lex))
            .collect::<Result<Vec<_>>>()?;

        for i in 0..n {
            check_step(&steps, i, opts)?;
        }

        let lex_gb = GroebnerBasis::compute(&lex, &lex_steps)?;
        let staircase = lex_gb.staircase()?;
        let (residue, coords, repr) = if staircase.len() == 1 {
            let coords = (0..n)
                .map(|i| {
                    let v = Polynomial::var(&lex, to_lex[i]);
                    Ok(lex_gb.normal_form(&v)?.constant_coefficient())
                })
                .collect::<Result<Vec<_>>>()?;
            (field.clone(), coords, ResidueRepr::Coefficient)
        } else {
            let kappa = Field::tower(lex.clone(), lex_gb.clone())?;
            let coords = (0..n)
                .map(|i| {
                    let v = Polynomial::var(&lex, to_lex[i]);
                    Ok(Value::Residue(lex_gb.normal_form(&v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let vars = (0..n).map(|t| n - 1 - t).collect();
            (kappa, coords, ResidueRepr::Tower { vars })
        };
        let ideal = GroebnerBasis::compute(ring, &steps)?;
        let point = Self {
            scheme: scheme.clone(),
            kind: PointKind::Closed,
            ideal,
            residue,
            coords,
            repr,
        };
        point.check_on_scheme()?;
        Ok(point)
    }

    /// A closed point given by a maximal ideal of the scheme's ring.
    pub fn from_maximal_ideal(scheme: &AffinePresentation, ideal: GroebnerBasis) -> Result<Self> {
        let ring = scheme.ring();
        if !ideal.ring().same(ring) {
            return Err(Error::IncompatibleContext(
                "point ideal lives in another ring".into(),
            ));
        }
        let n = ring.nvars();
        let staircase = ideal.staircase()?;
        if staircase.is_empty() {
            return Err(Error::UnitIdeal);
        }
        let (residue, coords, repr) = if staircase.len() == 1 {
            let coords = (0..n)
                .map(|i| {
                    Ok(ideal
                        .normal_form(&Polynomial::var(ring, i))?
                        .constant_coefficient())
                })
                .collect::<Result<Vec<_>>>()?;
            (ring.field().clone(), coords, ResidueRepr::Coefficient)
        } else {
            let kappa = Field::tower(ring.clone(), ideal.clone())?;
            let coords = (0..n)
                .map(|i| {
                    Ok(Value::Residue(
                        ideal.normal_form(&Polynomial::var(ring, i))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            (
                kappa,
                coords,
                ResidueRepr::Tower {
                    vars: (0..n).collect(),
                },
            )
        };
        let point = Self {
            scheme: scheme.clone(),
            kind: PointKind::Closed,
            ideal,
            residue,
            coords,
            repr,
        };
        point.check_on_scheme()?;
        Ok(point)
    }

    /// The generic point; primality of the scheme ideal is trusted and
    /// refuted lazily by zero-divisor witnesses.
    pub fn generic(scheme: &AffinePresentation) -> Result<Self> {
        let ring = scheme.ring();
        let n = ring.nvars();
        let ideal = scheme.gb().clone();
        let (residue, coords, repr) = if n == 0 {
            (ring.field().clone(), Vec::new(), ResidueRepr::Coefficient)
        } else {
            let kappa = Field::fraction(ring.clone(), ideal.clone())?;
            let fr = kappa.as_fraction().expect("fraction field");
            let coords = (0..n)
                .map(|i| fr.normalize(Polynomial::var(ring, i), Polynomial::one(ring)))
                .collect::<Result<Vec<_>>>()?;
            (kappa, coords, ResidueRepr::Fraction)
        };
        Ok(Self {
            scheme: scheme.clone(),
            kind: PointKind::Generic,
            ideal,
            residue,
            coords,
            repr,
        })
    }

    /// The same point viewed on a closed subscheme that still contains it.
    pub fn on_subscheme(&self, sub: &AffinePresentation) -> Result<Self> {
        if !sub.ring().same(self.scheme.ring()) {
            return Err(Error::IncompatibleContext(
                "subscheme lives in another ring".into(),
            ));
        }
        let mut point = self.clone();
        point.scheme = sub.clone();
        if point.kind == PointKind::Generic {
            return Self::generic(sub);
        }
        point.check_on_scheme()?;
        Ok(point)
    }

    fn check_on_scheme(&self) -> Result<()> {
        for h in self.scheme.gens() {
            let v = self.evaluate(h)?;
            if !self.residue.is_zero(&v) {
                return Err(Error::PointNotOnScheme {
                    generator: h.to_string(),
                    value: self.residue.value_to_string(&v),
                });
            }
        }
        Ok(())
    }

    pub fn scheme(&self) -> &AffinePresentation {
        &self.scheme
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.kind == PointKind::Closed
    }

    /// Point ideal `m` (closed) or the scheme ideal (generic).
    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn residue(&self) -> &Field {
        &self.residue
    }

    /// Classes of the coordinate functions in the residue field.
    pub fn coords(&self) -> &[Value] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// `p(x)`, the image of `p` in the residue field.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Value> {
        if !p.ring().same(self.scheme.ring()) {
            return Err(Error::IncompatibleContext(format!(
                "cannot evaluate {p} at a point of {:?}",
                self.scheme.ring()
            )));
        }
        p.evaluate(&self.residue, &self.coords)
    }

    /// Transcendence degree of the residue field over the prime field,
    /// relative to the coefficient field.
    pub fn transcendence_degree(&self) -> Result<usize> {
        match self.kind {
            PointKind::Closed => Ok(0),
            PointKind::Generic => self.ideal.krull_dimension(),
        }
    }

    /// Maps a residue-field value into `target`, given the images there of
    /// the scheme coordinates.
    pub fn push_forward(&self, v: &Value, target: &Field, images: &[Value]) -> Result<Value> {
        match &self.repr {
            ResidueRepr::Coefficient => target.embed_from(&self.residue, v),
            ResidueRepr::Tower { vars } => {
                let Value::Residue(p) = v else {
                    return Err(Error::IncompatibleContext("expected a tower value".into()));
                };
                let permuted = vars.iter().map(|&i| images[i].clone()).collect::<Vec<_>>();
                p.evaluate(target, &permuted)
            }
            ResidueRepr::Fraction => {
                let Value::Fraction(nd) = v else {
                    return Err(Error::IncompatibleContext(
                        "expected a fraction value".into(),
                    ));
                };
                let num = nd.0.evaluate(target, images)?;
                let den = nd.1.evaluate(target, images)?;
                target.div(&num, &den)
            }
        }
    }
}

/// Divides out a constant leading coefficient and checks the triangular
/// shape of step `i`.
fn normalize_step(p: &Polynomial, i: usize) -> Result<Polynomial> {
    let n = p.ring().nvars();
    let var = &p.ring().vars()[i];
    if p.support()
        .iter()
        .enumerate()
        .any(|(j, &used)| used && j > i)
    {
        return Err(Error::InvalidPointSpec(format!(
            "tower step {p} uses a variable after {var}"
        )));
    }
    let d = p.degree_in(i);
    if d == 0 {
        return Err(Error::InvalidPointSpec(format!(
            "tower step {p} does not involve {var}"
        )));
    }
    let top = p
        .terms()
        .iter()
        .filter(|(m, _)| m.exponents()[i] == d)
        .collect::<Vec<_>>();
    let mut pure = vec![0u32; n];
    pure[i] = d;
    if top.len() != 1 || top[0].0 != Monomial::new(pure) {
        return Err(Error::InvalidPointSpec(format!(
            "tower step {p} is not monic in {var}"
        )));
    }
    let lc = top[0].1.clone();
    p.scale(&p.field().inv(&lc)?)
}

/// Strict-mode irreducibility of step `i` over the tower of earlier steps.
fn check_step(steps: &[Polynomial], i: usize, opts: ResolveOptions) -> Result<()> {
    let p = &steps[i];
    let ring = p.ring();
    let field = ring.field().clone();
    // Coefficient field K_{i-1} and a map from polynomials in x_1..x_{i-1}.
    let lower_names = ring.vars()[..i].iter().rev().cloned().collect::<Vec<_>>();
    let lower = PolyRing::new(field.clone(), &lower_names, MonomialOrder::Lex);
    let to_lower = (0..ring.nvars())
        .map(|j| if j < i { i - 1 - j } else { 0 })
        .collect::<Vec<_>>();
    let lower_gb = GroebnerBasis::compute(
        &lower,
        &steps[..i]
            .iter()
            .map(|s| s.embed(&lower, &to_lower))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let rational_below = lower_gb.staircase()?.len() == 1;
    let kfield = if rational_below {
        field.clone()
    } else {
        Field::tower(lower.clone(), lower_gb.clone())?
    };
    let d = p.degree_in(i) as usize;
    let mut coeffs = vec![Polynomial::zero(&lower); d + 1];
    for (m, c) in p.terms() {
        let e = m.exponents()[i] as usize;
        let mut exps = m.exponents().to_vec();
        exps[i] = 0;
        let mono = Polynomial::monomial(ring, Monomial::new(exps), c.clone());
        coeffs[e] = coeffs[e].add(&mono.embed(&lower, &to_lower)?)?;
    }
    let values = coeffs
        .into_iter()
        .map(|c| {
            let nf = lower_gb.normal_form(&c)?;
            Ok(if rational_below {
                nf.constant_coefficient()
            } else {
                Value::Residue(nf)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let uni = UniPoly::new(&kfield, values);
    let seed = opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    if let Irreducibility::Reducible(factor) = irreducibility_check(&uni, opts.trust_point, seed)? {
        let cofactor = uni.div_exact(&factor)?;
        let var = &ring.vars()[i];
        return Err(Error::ReducibleTowerStep {
            step: p.to_string(),
            factor: factor.display_in(var),
            cofactor: cofactor.display_in(var),
        });
    }
    Ok(())
}

/// The residue-field injection `kappa(s) -> kappa(x)` induced by `f`.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    source: ResolvedPoint,
    target: Field,
    images: Vec<Value>,
}

impl EmbeddingMap {
    pub fn source(&self) -> &Field {
        self.source.residue()
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// `g_j(x)` for each target coordinate `y_j`.
    pub fn images(&self) -> &[Value] {
        &self.images
    }

    pub fn apply(&self, v: &Value) -> Result<Value> {
        self.source.push_forward(v, &self.target, &self.images)
    }
}

/// Checks `f(x) = s` and builds `i_x`.
pub fn verify_image(f: &Morphism, x: &ResolvedPoint, s: &ResolvedPoint) -> Result<EmbeddingMap> {
    let kx = x.residue();
    let images = f
        .pullbacks()
        .iter()
        .map(|g| x.evaluate(g))
        .collect::<Result<Vec<_>>>()?;
    for q in s.ideal().polys() {
        let v = q.evaluate(kx, &images)?;
        if !kx.is_zero(&v) {
            return Err(Error::PointImageMismatch(format!(
                "{q} pulls back to {} at x, which is not zero",
                kx.value_to_string(&v)
            )));
        }
    }
    if !s.is_closed() && f.target().nvars() > 0 {
        check_dominant(f, x, s)?;
    }
    Ok(EmbeddingMap {
        source: s.clone(),
        target: kx.clone(),
        images,
    })
}

/// For generic `s`: the kernel of `K[y] -> kappa(x)` must be the ideal of S.
fn check_dominant(f: &Morphism, x: &ResolvedPoint, s: &ResolvedPoint) -> Result<()> {
    let xr = f.source().ring();
    let sr = f.target().ring();
    let (n, m) = (xr.nvars(), sr.nvars());
    let names = xr
        .vars()
        .iter()
        .map(|v| format!("X.{v}"))
        .chain(sr.vars().iter().map(|v| format!("S.{v}")))
        .collect::<Vec<_>>();
    let elim = PolyRing::new(xr.field().clone(), &names, MonomialOrder::Lex);
    let x_map = (0..n).collect::<Vec<_>>();
    let mut gens = x
        .ideal()
        .polys()
        .iter()
        .map(|p| p.embed(&elim, &x_map))
        .collect::<Result<Vec<_>>>()?;
    for (j, g) in f.pullbacks().iter().enumerate() {
        gens.push(Polynomial::var(&elim, n + j).sub(&g.embed(&elim, &x_map)?)?);
    }
    let gb = GroebnerBasis::compute(&elim, &gens)?;
    let eliminated = (0..n + m).map(|i| i < n).collect::<Vec<_>>();
    let back = (0..n + m).map(|i| i.saturating_sub(n)).collect::<Vec<_>>();
    for k in gb.eliminate(&eliminated) {
        let q = k.embed(sr, &back)?;
        if !s.ideal().contains(&q)? {
            return Err(Error::PointImageMismatch(format!(
                "f(x) is not the generic point of S: {q} vanishes at f(x)"
            )));
        }
    }
    Ok(())
}

/// The fiber `X_s` over `kappa(s)` with `x` resolved on it.
#[derive(Clone, Debug)]
pub struct Fiber {
    presentation: AffinePresentation,
    point: ResolvedPoint,
}

impl Fiber {
    pub fn build(f: &Morphism, x: &ResolvedPoint, s: &ResolvedPoint) -> Result<Self> {
        let ks = s.residue().clone();
        let xr = f.source().ring();
        let ring = xr.with_field(ks.clone());
        let mut gens = f
            .source()
            .gens()
            .iter()
            .map(|h| h.with_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        for (g, sj) in f.pullbacks().iter().zip(s.coords()) {
            gens.push(
                g.with_ring(&ring)?
                    .sub(&Polynomial::constant(&ring, sj.clone()))?,
            );
        }
        let presentation = AffinePresentation::new(&ring, gens)?;
        let point = match x.kind() {
            PointKind::Closed => {
                let mut pg = x
                    .ideal()
                    .polys()
                    .iter()
                    .map(|p| p.with_ring(&ring))
                    .collect::<Result<Vec<_>>>()?;
                pg.extend_from_slice(presentation.gens());
                let ideal = GroebnerBasis::compute(&ring, &pg)?;
                ResolvedPoint::from_maximal_ideal(&presentation, ideal)?
            }
            PointKind::Generic => ResolvedPoint::generic(&presentation)?,
        };
        Ok(Self {
            presentation,
            point,
        })
    }

    pub fn presentation(&self) -> &AffinePresentation {
        &self.presentation
    }

    pub fn point(&self) -> &ResolvedPoint {
        &self.point
    }

    /// The identification `kappa(x) -> kappa_fiber(x)`.
    pub fn transport(&self, x: &ResolvedPoint, v: &Value) -> Result<Value> {
        x.push_forward(v, self.point.residue(), self.point.coords())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn pres(field: &Field, vars: &[&str], gens: &[&str]) -> AffinePresentation {
        let ring = PolyRing::new(field.clone(), vars, MonomialOrder::GrevLex);
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(&ring, g).unwrap())
            .collect();
        AffinePresentation::new(&ring, gens).unwrap()
    }

    fn closed(x: &AffinePresentation, tower: &[&str]) -> Result<ResolvedPoint> {
        let steps = tower
            .iter()
            .map(|p| parse_polynomial(x.ring(), p).unwrap())
            .collect();
        ResolvedPoint::resolve(x, &PointSpec::Closed(steps), ResolveOptions::default())
    }

    #[test]
    fn gaussian_point_on_the_line() {
        let q = Field::rationals();
        let line = pres(&q, &["x"], &[]);
        let p = closed(&line, &["x^2 + 1"]).unwrap();
        assert_eq!(p.residue().dimension_over_base(), Some(2));
        let v = p
            .evaluate(&parse_polynomial(line.ring(), "x^2 + 1").unwrap())
            .unwrap();
        assert!(p.residue().is_zero(&v));
    }

    #[test]
    fn reducible_step_is_rejected_with_witness() {
        let q = Field::rationals();
        let line = pres(&q, &["x"], &[]);
        let err = closed(&line, &["x^2 - 1"]).unwrap_err();
        assert!(matches!(err, Error::ReducibleTowerStep { .. }));
        assert!(err.to_string().contains("ZeroDivisorWitness"));
    }

    #[test]
    fn point_must_lie_on_scheme() {
        let q = Field::rationals();
        let node = pres(&q, &["x", "y"], &["y^2 - x^3 - x^2"]);
        assert!(closed(&node, &["x", "y"]).is_ok());
        let err = closed(&node, &["x - 1", "y"]).unwrap_err();
        assert!(matches!(err, Error::PointNotOnScheme { .. }));
        assert!(matches!(
            closed(&node, &["x"]),
            Err(Error::NotZeroDimensional)
        ));
        assert!(matches!(
            closed(&node, &["x*y", "y"]),
            Err(Error::InvalidPointSpec(_))
        ));
    }

    #[test]
    fn generic_point_of_affine_line() {
        let q = Field::rationals();
        let line = pres(&q, &["t"], &[]);
        let p = ResolvedPoint::generic(&line).unwrap();
        assert_eq!(p.residue().value_to_string(&p.coords()[0]), "t");
        assert_eq!(p.transcendence_degree().unwrap(), 1);
    }

    fn inseparable_setup(p: u64) -> (Morphism, ResolvedPoint, ResolvedPoint) {
        let k = Field::prime(p).unwrap();
        let x = pres(&k, &["u", "v"], &["v^2 - u"]);
        let s = pres(&k, &["u"], &[]);
        let g = vec![parse_polynomial(x.ring(), "u").unwrap()];
        let f = Morphism::new(x.clone(), s.clone(), g).unwrap();
        let xp = ResolvedPoint::generic(&x).unwrap();
        let sp = ResolvedPoint::generic(&s).unwrap();
        (f, xp, sp)
    }

    #[test]
    fn embedding_sends_u_to_v_squared() {
        let (f, x, s) = inseparable_setup(2);
        let ix = verify_image(&f, &x, &s).unwrap();
        let u = s.coords()[0].clone();
        let image = ix.apply(&u).unwrap();
        let v2 = x.residue().mul(&x.coords()[1], &x.coords()[1]).unwrap();
        assert!(x.residue().eq(&image, &v2));
    }

    #[test]
    fn generic_x_does_not_map_to_closed_origin() {
        let (f, x, _) = inseparable_setup(2);
        let s = closed(f.target(), &["u"]).unwrap();
        assert!(matches!(
            verify_image(&f, &x, &s),
            Err(Error::PointImageMismatch(_))
        ));
    }

    #[test]
    fn closed_x_is_not_over_generic_s() {
        let q = Field::rationals();
        let x = pres(&q, &["x", "y"], &[]);
        let s = pres(&q, &["y"], &[]);
        let f = Morphism::new(
            x.clone(),
            s.clone(),
            vec![parse_polynomial(x.ring(), "y").unwrap()],
        )
        .unwrap();
        let xp = closed(&x, &["x", "y"]).unwrap();
        let sp = ResolvedPoint::generic(&s).unwrap();
        assert!(matches!(
            verify_image(&f, &xp, &sp),
            Err(Error::PointImageMismatch(_))
        ));
    }

    #[test]
    fn fiber_of_projection_is_a_line() {
        let q = Field::rationals();
        let x = pres(&q, &["x", "y"], &[]);
        let s = pres(&q, &["y"], &[]);
        let f = Morphism::new(
            x.clone(),
            s.clone(),
            vec![parse_polynomial(x.ring(), "y").unwrap()],
        )
        .unwrap();
        let xp = closed(&x, &["x", "y"]).unwrap();
        let sp = closed(&s, &["y"]).unwrap();
        verify_image(&f, &xp, &sp).unwrap();
        let fiber = Fiber::build(&f, &xp, &sp).unwrap();
        let polys = fiber
            .presentation()
            .gb()
            .polys()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>();
        assert_eq!(polys, vec!["y"]);
        assert!(fiber.point().is_closed());
    }

    #[test]
    fn invalid_morphism_is_rejected() {
        let q = Field::rationals();
        let x = pres(&q, &["x"], &[]);
        let s = pres(&q, &["y"], &["y^2"]);
        let err = Morphism::new(x.clone(), s, vec![parse_polynomial(x.ring(), "x").unwrap()])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidMorphism(_)));
    }
}
