//! The line-oriented problem-file format.
//!
//! ```text
//! base = Q
//! [X]
//! vars = x, y
//! ideal = y^2 - x^3 - x^2
//! [point.x]
//! kind = closed
//! tower = x; y
//! ```

use std::fmt;
use std::str::FromStr;

use tangent_core::arith::Field;
use tangent_core::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial, Ring};
use tangent_core::scheme::{AffinePresentation, Morphism, PointSpec, ResolveOptions};
use tangent_core::tangent::Problem;
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FileError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSpec {
    Rationals,
    Prime(u64),
}

impl BaseSpec {
    pub fn field(self) -> Result<Field, FileError> {
        match self {
            BaseSpec::Rationals => Ok(Field::rationals()),
            BaseSpec::Prime(p) => Field::prime(p).map_err(|e| FileError::Semantic(e.to_string())),
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Rationals => write!(f, "Q"),
            BaseSpec::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchemeSection {
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKindSpec {
    Closed,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSection {
    pub kind: PointKindSpec,
    pub tower: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub order: MonomialOrder,
    pub trust_point: bool,
    pub seed: u64,
    /// Testing aid: corrupts the report before the consistency checks run.
    pub inject_fault: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            order: MonomialOrder::GrevLex,
            trust_point: false,
            seed: DEFAULT_SEED,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub base: BaseSpec,
    pub s: Option<SchemeSection>,
    pub x: SchemeSection,
    /// `(y_j, g_j)` in file order.
    pub map: Vec<(String, String)>,
    pub point_x: PointSection,
    pub point_s: Option<PointSection>,
    pub options: Options,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    S,
    X,
    Map,
    PointX,
    PointS,
    Options,
}

#[derive(Default)]
struct PointDraft {
    kind: Option<PointKindSpec>,
    tower: Option<Vec<String>>,
    line: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> FileError {
    FileError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn split_list(value: &str, sep: char) -> Vec<String> {
    value
        .split(sep)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_bool(v: &str, line: usize, col: usize) -> Result<bool, FileError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(perr(
            line,
            col,
            format!("expected true or false, found `{v}`"),
        )),
    }
}

impl FromStr for ProblemFile {
    type Err = FileError;

    fn from_str(text: &str) -> Result<Self, FileError> {
        let mut base = None;
        let mut s: Option<SchemeSection> = None;
        let mut x: Option<SchemeSection> = None;
        let mut map = Vec::new();
        let mut seen_map = false;
        let mut px: Option<PointDraft> = None;
        let mut ps: Option<PointDraft> = None;
        let mut options = Options::default();
        let mut section = Section::Top;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len() + 1;
            if let Some(rest) = trimmed.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| perr(line, indent, "unterminated section header"))?
                    .trim();
                section = match name {
                    "S" => {
                        if s.is_some() {
                            return Err(perr(line, indent, "duplicate [S] section"));
                        }
                        s = Some(SchemeSection::default());
                        Section::S
                    }
                    "X" => {
                        if x.is_some() {
                            return Err(perr(line, indent, "duplicate [X] section"));
                        }
                        x = Some(SchemeSection::default());
                        Section::X
                    }
                    "map" => {
                        if seen_map {
                            return Err(perr(line, indent, "duplicate [map] section"));
                        }
                        seen_map = true;
                        Section::Map
                    }
                    "point.x" => {
                        if px.is_some() {
                            return Err(perr(line, indent, "duplicate [point.x] section"));
                        }
                        px = Some(PointDraft {
                            line,
                            ..Default::default()
                        });
                        Section::PointX
                    }
                    "point.s" => {
                        if ps.is_some() {
                            return Err(perr(line, indent, "duplicate [point.s] section"));
                        }
                        ps = Some(PointDraft {
                            line,
                            ..Default::default()
                        });
                        Section::PointS
                    }
                    "options" => Section::Options,
                    other => return Err(perr(line, indent, format!("unknown section [{other}]"))),
                };
                continue;
            }

            if section == Section::Map {
                for assignment in trimmed.split(';').map(str::trim).filter(|a| !a.is_empty()) {
                    let (y, g) = assignment.split_once('=').ok_or_else(|| {
                        perr(
                            line,
                            indent,
                            format!("expected `y = g`, found `{assignment}`"),
                        )
                    })?;
                    let (y, g) = (y.trim(), g.trim());
                    if y.is_empty() || g.is_empty() {
                        return Err(perr(line, indent, "empty side in map assignment"));
                    }
                    map.push((y.to_string(), g.to_string()));
                }
                continue;
            }
            if section == Section::Options {
                for item in trimmed.split(',').map(str::trim).filter(|a| !a.is_empty()) {
                    let (k, v) = item.split_once('=').ok_or_else(|| {
                        perr(
                            line,
                            indent,
                            format!("expected `key = value`, found `{item}`"),
                        )
                    })?;
                    let (k, v) = (k.trim(), v.trim());
                    let col = content.find(k).unwrap_or(0) + 1;
                    match k {
                        "order" => {
                            options.order = v.parse().map_err(|e: String| perr(line, col, e))?
                        }
                        "trust_point" => options.trust_point = parse_bool(v, line, col)?,
                        "inject_fault" => options.inject_fault = parse_bool(v, line, col)?,
                        "seed" => {
                            options.seed = v
                                .parse()
                                .map_err(|_| perr(line, col, format!("invalid seed `{v}`")))?
                        }
                        _ => return Err(perr(line, col, format!("unknown option `{k}`"))),
                    }
                }
                continue;
            }

            let (key, value) = trimmed.split_once('=').ok_or_else(|| {
                perr(
                    line,
                    indent,
                    format!("expected `key = value`, found `{trimmed}`"),
                )
            })?;
            let (key, value) = (key.trim(), value.trim());
            let vcol = content.find('=').map_or(indent, |p| p + 2);
            match (section, key) {
                (Section::Top, "base") => {
                    let parts = value.split_whitespace().collect::<Vec<_>>();
                    base = Some(match parts.as_slice() {
                        ["Q"] => BaseSpec::Rationals,
                        ["Fp", p] => BaseSpec::Prime(
                            p.parse()
                                .map_err(|_| perr(line, vcol, format!("invalid prime `{p}`")))?,
                        ),
                        _ => {
                            return Err(perr(
                                line,
                                vcol,
                                format!("expected `Q` or `Fp <p>`, found `{value}`"),
                            ))
                        }
                    });
                }
                (Section::S | Section::X, "vars" | "ideal") => {
                    let sec = if section == Section::S {
                        s.as_mut()
                    } else {
                        x.as_mut()
                    }
                    .expect("section opened");
                    if key == "vars" {
                        sec.vars = split_list(value, ',');
                    } else {
                        sec.ideal = split_list(value, ';');
                    }
                }
                (Section::PointX | Section::PointS, "kind" | "tower") => {
                    let draft = if section == Section::PointX {
                        px.as_mut()
                    } else {
                        ps.as_mut()
                    }
                    .expect("section opened");
                    if key == "kind" {
                        draft.kind = Some(match value {
                            "closed" => PointKindSpec::Closed,
                            "generic" => PointKindSpec::Generic,
                            _ => {
                                return Err(perr(
                                    line,
                                    vcol,
                                    format!("expected closed or generic, found `{value}`"),
                                ))
                            }
                        });
                    } else {
                        draft.tower = Some(split_list(value, ';'));
                    }
                }
                _ => return Err(perr(line, indent, format!("unexpected key `{key}` here"))),
            }
        }

        let base = base.ok_or_else(|| FileError::Semantic("missing `base = ...`".into()))?;
        let x = x.ok_or_else(|| FileError::Semantic("missing [X] section".into()))?;
        let finish = |d: PointDraft, name: &str| -> Result<PointSection, FileError> {
            let kind = d.kind.ok_or_else(|| {
                perr(d.line, 1, format!("[{name}] needs `kind = closed|generic`"))
            })?;
            let tower = d.tower.unwrap_or_default();
            if kind == PointKindSpec::Generic && !tower.is_empty() {
                return Err(FileError::Semantic(format!(
                    "[{name}] is generic but has a tower"
                )));
            }
            Ok(PointSection { kind, tower })
        };
        let point_x = finish(
            px.ok_or_else(|| FileError::Semantic("missing [point.x] section".into()))?,
            "point.x",
        )?;
        let point_s = ps.map(|d| finish(d, "point.s")).transpose()?;
        if seen_map && s.is_none() {
            return Err(FileError::Semantic("[map] given without [S]".into()));
        }
        if s.is_some() && !seen_map {
            return Err(FileError::Semantic("[S] given without [map]".into()));
        }
        if s.is_some() && point_s.is_none() {
            return Err(FileError::Semantic("[S] given without [point.s]".into()));
        }
        if s.is_none() && point_s.is_some() {
            return Err(FileError::Semantic("[point.s] given without [S]".into()));
        }
        Ok(Self {
            base,
            s,
            x,
            map,
            point_x,
            point_s,
            options,
        })
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base = {}", self.base)?;
        let scheme = |f: &mut fmt::Formatter<'_>, name: &str, sec: &SchemeSection| {
            writeln!(f, "\n[{name}]")?;
            writeln!(f, "vars = {}", sec.vars.join(", "))?;
            writeln!(f, "ideal = {}", sec.ideal.join("; "))
        };
        let point = |f: &mut fmt::Formatter<'_>, name: &str, p: &PointSection| {
            writeln!(f, "\n[{name}]")?;
            match p.kind {
                PointKindSpec::Generic => writeln!(f, "kind = generic"),
                PointKindSpec::Closed => {
                    writeln!(f, "kind = closed")?;
                    writeln!(f, "tower = {}", p.tower.join("; "))
                }
            }
        };
        if let Some(s) = &self.s {
            scheme(f, "S", s)?;
        }
        scheme(f, "X", &self.x)?;
        if self.s.is_some() {
            writeln!(f, "\n[map]")?;
            for (y, g) in &self.map {
                writeln!(f, "{y} = {g}")?;
            }
        }
        point(f, "point.x", &self.point_x)?;
        if let Some(p) = &self.point_s {
            point(f, "point.s", p)?;
        }
        let o = &self.options;
        writeln!(f, "\n[options]")?;
        writeln!(f, "order = {}", o.order)?;
        writeln!(f, "trust_point = {}", o.trust_point)?;
        writeln!(f, "seed = {}", o.seed)?;
        if o.inject_fault {
            writeln!(f, "inject_fault = true")?;
        }
        Ok(())
    }
}

fn semantic(e: tangent_core::Error) -> FileError {
    FileError::Semantic(e.to_string())
}

fn check_vars(vars: &[String], what: &str) -> Result<(), FileError> {
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(FileError::Semantic(format!(
                "invalid variable name `{v}` in {what}"
            )));
        }
        if vars[..i].contains(v) {
            return Err(FileError::Semantic(format!(
                "duplicate variable `{v}` in {what}"
            )));
        }
    }
    Ok(())
}

fn polys(ring: &Ring, src: &[String]) -> Result<Vec<Polynomial>, FileError> {
    src.iter()
        .map(|p| parse_polynomial(ring, p).map_err(semantic))
        .collect()
}

fn point_spec(ring: &Ring, p: &PointSection) -> Result<PointSpec, FileError> {
    Ok(match p.kind {
        PointKindSpec::Generic => PointSpec::Generic,
        PointKindSpec::Closed => PointSpec::Closed(polys(ring, &p.tower)?),
    })
}

/// Errors from the algebra layer while building the presentations; they keep
/// their own exit codes.
#[derive(Debug)]
pub enum BuildError {
    File(FileError),
    Algebra(tangent_core::Error),
}

impl From<FileError> for BuildError {
    fn from(e: FileError) -> Self {
        BuildError::File(e)
    }
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<Problem, BuildError> {
        let field = self.base.field()?;
        let order = self.options.order;
        check_vars(&self.x.vars, "[X]")?;
        let xr = PolyRing::new(field.clone(), &self.x.vars, order);
        let xgens = polys(&xr, &self.x.ideal)?;
        let x = AffinePresentation::new(&xr, xgens).map_err(BuildError::Algebra)?;
        let point_x = point_spec(&xr, &self.point_x)?;
        let (morphism, point_s) = match &self.s {
            None => (Morphism::absolute(x), PointSpec::Closed(Vec::new())),
            Some(s) => {
                check_vars(&s.vars, "[S]")?;
                let sr = PolyRing::new(field, &s.vars, order);
                let sgens = polys(&sr, &s.ideal)?;
                let target = AffinePresentation::new(&sr, sgens).map_err(BuildError::Algebra)?;
                let mut pullbacks = Vec::with_capacity(s.vars.len());
                for y in &s.vars {
                    let hits = self.map.iter().filter(|(v, _)| v == y).collect::<Vec<_>>();
                    match hits.as_slice() {
                        [(_, g)] => pullbacks.push(parse_polynomial(&xr, g).map_err(semantic)?),
                        [] => {
                            return Err(
                                FileError::Semantic(format!("[map] does not assign `{y}`")).into()
                            )
                        }
                        _ => {
                            return Err(
                                FileError::Semantic(format!("[map] assigns `{y}` twice")).into()
                            )
                        }
                    }
                }
                if let Some((y, _)) = self.map.iter().find(|(v, _)| !s.vars.contains(v)) {
                    return Err(FileError::Semantic(format!(
                        "[map] assigns unknown variable `{y}`"
                    ))
                    .into());
                }
                let morphism = Morphism::new(x, target, pullbacks).map_err(BuildError::Algebra)?;
                let ps = self.point_s.as_ref().expect("checked at parse time");
                (morphism, point_spec(&sr, ps)?)
            }
        };
        Ok(Problem {
            morphism,
            point_x,
            point_s,
            options: ResolveOptions {
                trust_point: self.options.trust_point,
                seed: self.options.seed,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = "base = Q\n[X]\nvars = x, y\nideal = y^2 - x^3 - x^2\n[point.x]\nkind = closed\ntower = x; y\n";

    #[test]
    fn parses_the_node() {
        let f: ProblemFile = NODE.parse().unwrap();
        assert_eq!(f.x.vars, vec!["x", "y"]);
        assert_eq!(f.x.ideal, vec!["y^2 - x^3 - x^2"]);
        assert_eq!(f.point_x.tower, vec!["x", "y"]);
        assert!(f.to_problem().is_ok());
    }

    #[test]
    fn pretty_printing_round_trips() {
        let f: ProblemFile = NODE.parse().unwrap();
        let again: ProblemFile = f.to_string().parse().unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn options_accept_lines_and_commas() {
        let text = format!("{NODE}[options]\norder = lex, trust_point = true\nseed = 7\n");
        let f: ProblemFile = text.parse().unwrap();
        assert_eq!(f.options.order, MonomialOrder::Lex);
        assert!(f.options.trust_point);
        assert_eq!(f.options.seed, 7);
    }

    #[test]
    fn reports_positions_and_semantic_errors() {
        let err = "base = Q\n[X]\nvars = x\nideal x^2\n"
            .parse::<ProblemFile>()
            .unwrap_err();
        assert!(matches!(err, FileError::Parse { line: 4, .. }), "{err}");
        let err = "base = Q\n[X]\nvars = x\n[map]\ny = x\n[point.x]\nkind = generic\n"
            .parse::<ProblemFile>()
            .unwrap_err();
        assert!(matches!(err, FileError::Semantic(_)));
        let f: ProblemFile = "base = Q\n[X]\nvars = x\nideal = z\n[point.x]\nkind = generic\n"
            .parse()
            .unwrap();
        assert!(matches!(
            f.to_problem(),
            Err(BuildError::File(FileError::Semantic(_)))
        ));
    }
}
