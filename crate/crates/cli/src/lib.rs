//! Problem files, report documents and corpus runs for the `tangent` binary.

pub mod corpus;
pub mod exit;
pub mod file;
pub mod report;

use tangent_core::poly::MonomialOrder;
use tangent_core::tangent::{analyze, ComparisonReport};

use crate::file::ProblemFile;
use crate::report::ReportDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Explain,
}

/// Command-line settings that take precedence over the file's `[options]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub order: Option<MonomialOrder>,
    pub trust_point: bool,
    pub seed: Option<u64>,
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, msg: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Corrupts a report so that the consistency checks fire.
fn inject_fault(r: &mut ComparisonReport) {
    r.dim_fiber_tangent += 1;
    r.sequences.lemma1_ok = false;
}

/// Parses, analyzes and renders one problem file.
pub fn run_analyze(text: &str, format: Format, overrides: Overrides) -> Outcome {
    let mut file: ProblemFile = match text.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::error(exit::code_for_file(&e), e.to_string()),
    };
    if let Some(order) = overrides.order {
        file.options.order = order;
    }
    file.options.trust_point |= overrides.trust_point;
    if let Some(seed) = overrides.seed {
        file.options.seed = seed;
    }
    let problem = match file.to_problem() {
        Ok(p) => p,
        Err(file::BuildError::File(e)) => {
            return Outcome::error(exit::code_for_file(&e), e.to_string())
        }
        Err(file::BuildError::Algebra(e)) => {
            return Outcome::error(exit::code_for(&e), e.to_string())
        }
    };
    let mut report = match analyze(&problem) {
        Ok(r) => r,
        Err(e) => return Outcome::error(exit::code_for(&e), e.to_string()),
    };
    if file.options.inject_fault {
        inject_fault(&mut report);
    }
    let stdout = match format {
        Format::Json => ReportDocument::new(&report, text, file.options.seed).to_json() + "\n",
        Format::Text => report::render_text(&report),
        Format::Explain => report::render_explain(&report),
    };
    match report.verify() {
        Ok(()) => Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit::code_for(&e),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}
