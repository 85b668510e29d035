//! Library half of the command-line front end: document parsing, the
//! analysis pipeline, report emission, and SVG rendering. The binary in
//! `main.rs` is a thin verb dispatcher over these.

pub mod doc;
pub mod fmt;
pub mod report;
pub mod svg;

pub use doc::{parse_problem_document, DocError, ProblemDocument};
pub use report::{run_extend, run_problem, ReportDocument, RunOptions};
pub use svg::render_scene;
