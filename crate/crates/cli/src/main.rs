//! `bcpath` command-line tool.
//!
//! Exit codes: 0 success, 2 infeasible (no free candidate / extension
//! impossible), 3 parse or schema error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use bcpath_cli::doc::parse_problem_document;
use bcpath_cli::report::{run_extend, run_problem, RunOptions};
use bcpath_cli::svg::render_scene;

#[derive(Parser)]
#[command(
    name = "bcpath",
    about = "Bounded-curvature path analysis: Dubins candidates, proximity classes, trapping regions, exact extensions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Problem file to read.
    #[arg(short, long)]
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Enable sampling cross-checks in the report.
    #[arg(long)]
    oracle: bool,
    /// Seed for randomized oracle probes.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the endpoint condition and every Dubins candidate.
    Classify(IoArgs),
    /// Classify and summarize the trapping region (empty summary when none).
    Region(IoArgs),
    /// Plan a path meeting required_length (or the gradient lower bound).
    Plan(IoArgs),
    /// Extend the document's path (or the shortest candidate) to required_length.
    Extend(IoArgs),
    /// Validate the document's path and relate it to the region.
    CheckPath(IoArgs),
    /// Render the scene as SVG.
    Render {
        #[command(flatten)]
        io: IoArgs,
        /// SVG output file (falls back to --output / stdout).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Process many problem files; output order matches input order.
    Batch {
        /// Problem files or directories (directories expand to their
        /// sorted *.bcp and *.txt entries).
        #[arg(short, long, required = true, num_args = 1..)]
        input: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn write_out(target: &Option<PathBuf>, bytes: &str) -> std::io::Result<()> {
    match target {
        Some(path) => fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes.as_bytes()),
    }
}

fn fail(msg: &str, code: u8) -> ExitCode {
    eprintln!("bcpath: {msg}");
    ExitCode::from(code)
}

fn load(input: &Path) -> Result<(String, bcpath_cli::ProblemDocument), (String, u8)> {
    let text = fs::read_to_string(input)
        .map_err(|e| (format!("cannot read {}: {e}", input.display()), 3))?;
    let doc = parse_problem_document(&text)
        .map_err(|e| (format!("{}: {e}", input.display()), 3))?;
    Ok((text, doc))
}

fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, (String, u8)> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(input)
                .map_err(|e| (format!("cannot list {}: {e}", input.display()), 3))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|s| s.to_str()),
                        Some("bcp") | Some("txt")
                    )
                })
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(input.clone());
        }
    }
    Ok(files)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify(io) | Command::Region(io) => {
            let (_, doc) = match load(&io.input) {
                Ok(v) => v,
                Err((m, c)) => return fail(&m, c),
            };
            let report = run_problem(&doc);
            let options = RunOptions {
                oracle: io.oracle,
                seed: io.seed,
            };
            match write_out(&io.output, &report.emit(&options)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&format!("write failed: {e}"), 1),
            }
        }
        Command::CheckPath(io) => {
            let (_, doc) = match load(&io.input) {
                Ok(v) => v,
                Err((m, c)) => return fail(&m, c),
            };
            if doc.segments.is_empty() {
                return fail("check-path requires segment lines in the document", 3);
            }
            let report = run_problem(&doc);
            let options = RunOptions {
                oracle: io.oracle,
                seed: io.seed,
            };
            match write_out(&io.output, &report.emit(&options)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&format!("write failed: {e}"), 1),
            }
        }
        Command::Plan(io) => {
            let (_, doc) = match load(&io.input) {
                Ok(v) => v,
                Err((m, c)) => return fail(&m, c),
            };
            if doc.required_length.is_none() && doc.gradient.is_none() {
                return fail("plan requires required_length or a gradient block", 3);
            }
            let report = run_problem(&doc);
            let infeasible = report
                .plan
                .as_ref()
                .map(|p| p.outcome.is_err())
                .unwrap_or(false)
                || report
                    .gradient
                    .as_ref()
                    .map(|g| !g.report.feasible)
                    .unwrap_or(false);
            let options = RunOptions {
                oracle: io.oracle,
                seed: io.seed,
            };
            if let Err(e) = write_out(&io.output, &report.emit(&options)) {
                return fail(&format!("write failed: {e}"), 1);
            }
            if infeasible {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Extend(io) => {
            let (_, doc) = match load(&io.input) {
                Ok(v) => v,
                Err((m, c)) => return fail(&m, c),
            };
            if doc.required_length.is_none() {
                return fail("extend requires required_length", 3);
            }
            match run_extend(&doc) {
                Ok((report, _extended)) => {
                    let options = RunOptions {
                        oracle: io.oracle,
                        seed: io.seed,
                    };
                    match write_out(&io.output, &report.emit(&options)) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(e) => fail(&format!("write failed: {e}"), 1),
                    }
                }
                Err(msg) => fail(&msg, 2),
            }
        }
        Command::Render { io, svg } => {
            let (_, doc) = match load(&io.input) {
                Ok(v) => v,
                Err((m, c)) => return fail(&m, c),
            };
            let report = run_problem(&doc);
            let scene = render_scene(&doc, &report);
            let target = svg.or(io.output);
            match write_out(&target, &scene) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&format!("write failed: {e}"), 1),
            }
        }
        Command::Batch {
            input,
            output,
            oracle,
            seed,
        } => {
            let files = match expand_inputs(&input) {
                Ok(f) => f,
                Err((m, c)) => return fail(&m, c),
            };
            if files.is_empty() {
                return fail("batch: no input files", 3);
            }
            // Parse first so errors carry file anchors, then run in
            // parallel and emit strictly in input order.
            let mut docs = Vec::with_capacity(files.len());
            for f in &files {
                match load(f) {
                    Ok((_, doc)) => docs.push(doc),
                    Err((m, c)) => return fail(&m, c),
                }
            }
            let options = RunOptions { oracle, seed };
            let reports: Vec<(usize, String)> = docs
                .par_iter()
                .enumerate()
                .map(|(i, doc)| (i, run_problem(doc).emit(&options)))
                .collect();
            let mut ordered = reports;
            ordered.sort_by_key(|(i, _)| *i);
            let mut out = String::new();
            for ((_, body), file) in ordered.iter().zip(&files) {
                out.push_str(&format!("=== {} ===\n", file.display()));
                out.push_str(body);
                out.push('\n');
            }
            match write_out(&output, &out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&format!("write failed: {e}"), 1),
            }
        }
    }
}

fn cli_verb_needs_path(_io: &IoArgs) -> bool {
    false
}
