//! Problem-file ingestion: a flat key-value format chosen for diff
//! friendliness and bit-exact round trips.
//!
//! ```text
//! # comments and blank lines are allowed
//! x = 0 0 0              # px py heading-degrees
//! y = 2 0 0
//! kappa_max = 1          # optional, default 1
//! required_length = 10   # optional
//! vertical_drop = 70     # optional, paired with max_gradient
//! max_gradient = 0.1428
//! segment = line 0 0 2 0             # optional path under test, ordered
//! segment = arc 0 1 1 -90 90         # cx cy r start-deg sweep-deg
//! ```
//!
//! Angles in the file are degrees; everything internal is radians.

use bcpath::{
    normalize_problem, ArcSeg, Configuration, CurvaturePath, GeomError, LineSeg, PathSegment,
    Point, ProblemInstance,
};
use thiserror::Error;

use crate::fmt::fmt12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DocError {
    #[error("line {line}, col {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawConfig {
    pub px: f64,
    pub py: f64,
    pub heading_degrees: f64,
}

impl RawConfig {
    pub fn to_configuration(self) -> Configuration {
        Configuration::from_angle(Point::new(self.px, self.py), self.heading_degrees.to_radians())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSpec {
    pub vertical_drop: f64,
    pub max_gradient: f64,
}

/// Parsed problem document.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDocument {
    pub x: RawConfig,
    pub y: RawConfig,
    pub kappa_max: f64,
    pub required_length: Option<f64>,
    pub gradient: Option<GradientSpec>,
    pub segments: Vec<PathSegment>,
}

impl ProblemDocument {
    pub fn instance(&self) -> Result<ProblemInstance, GeomError> {
        normalize_problem(
            &self.x.to_configuration(),
            &self.y.to_configuration(),
            self.kappa_max,
        )
    }

    /// Path under test, mapped into the canonical frame of the instance.
    pub fn path_under_test(&self) -> Option<CurvaturePath> {
        if self.segments.is_empty() {
            return None;
        }
        Some(CurvaturePath::from_segments_unchecked(self.segments.clone()))
    }

    /// Canonical text form; `parse(emit(d))` reproduces `emit(d)` byte for
    /// byte.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        let cfg_line = |name: &str, c: &RawConfig| {
            format!(
                "{name} = {} {} {}\n",
                fmt12(c.px),
                fmt12(c.py),
                fmt12(c.heading_degrees)
            )
        };
        out.push_str(&cfg_line("x", &self.x));
        out.push_str(&cfg_line("y", &self.y));
        out.push_str(&format!("kappa_max = {}\n", fmt12(self.kappa_max)));
        if let Some(l) = self.required_length {
            out.push_str(&format!("required_length = {}\n", fmt12(l)));
        }
        if let Some(g) = self.gradient {
            out.push_str(&format!("vertical_drop = {}\n", fmt12(g.vertical_drop)));
            out.push_str(&format!("max_gradient = {}\n", fmt12(g.max_gradient)));
        }
        for seg in &self.segments {
            out.push_str(&emit_segment(seg));
        }
        out
    }
}

pub fn emit_segment(seg: &PathSegment) -> String {
    match seg {
        PathSegment::Line(l) => format!(
            "segment = line {} {} {} {}\n",
            fmt12(l.start.x),
            fmt12(l.start.y),
            fmt12(l.end.x),
            fmt12(l.end.y)
        ),
        PathSegment::Arc(a) => format!(
            "segment = arc {} {} {} {} {}\n",
            fmt12(a.center.x),
            fmt12(a.center.y),
            fmt12(a.radius),
            fmt12(a.start_angle.to_degrees()),
            fmt12(a.sweep.to_degrees())
        ),
    }
}

struct Cursor<'a> {
    line_no: usize,
    line: &'a str,
    tokens: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Cursor<'a> {
    fn new(line_no: usize, line: &'a str, after: usize) -> Self {
        let rest = &line[after..];
        let mut tokens = Vec::new();
        let mut offset = 0;
        for tok in rest.split_whitespace() {
            let found = rest[offset..].find(tok).expect("token came from rest") + offset;
            tokens.push((after + found + 1, tok));
            offset = found + tok.len();
        }
        Cursor {
            line_no,
            line,
            tokens,
            next: 0,
        }
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> DocError {
        DocError::Parse {
            line: self.line_no,
            col,
            msg: msg.into(),
        }
    }

    fn word(&mut self, what: &str) -> Result<(usize, &'a str), DocError> {
        if self.next >= self.tokens.len() {
            return Err(self.err(self.line.len() + 1, format!("expected {what}")));
        }
        let t = self.tokens[self.next];
        self.next += 1;
        Ok(t)
    }

    fn number(&mut self, what: &str) -> Result<f64, DocError> {
        let (col, tok) = self.word(what)?;
        tok.parse::<f64>()
            .map_err(|_| self.err(col, format!("expected number for {what}, got {tok:?}")))
    }

    fn finish(&self) -> Result<(), DocError> {
        if self.next < self.tokens.len() {
            let (col, tok) = self.tokens[self.next];
            return Err(self.err(col, format!("unexpected trailing token {tok:?}")));
        }
        Ok(())
    }
}

/// Parses the documented key-value format, rejecting unknown or duplicate
/// keys with a line/column anchor.
pub fn parse_problem_document(text: &str) -> Result<ProblemDocument, DocError> {
    let mut x: Option<RawConfig> = None;
    let mut y: Option<RawConfig> = None;
    let mut kappa_max: Option<f64> = None;
    let mut required_length: Option<f64> = None;
    let mut vertical_drop: Option<f64> = None;
    let mut max_gradient: Option<f64> = None;
    let mut segments: Vec<PathSegment> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let eq = line.find('=').ok_or(DocError::Parse {
            line: line_no,
            col: line.len() + 1,
            msg: "expected `key = value`".to_string(),
        })?;
        let key = line[..eq].trim();
        let key_col = line.find(key.chars().next().unwrap_or(' ')).unwrap_or(0) + 1;
        let mut cur = Cursor::new(line_no, line, eq + 1);

        let mut config_value = |cur: &mut Cursor| -> Result<RawConfig, DocError> {
            let px = cur.number("x position")?;
            let py = cur.number("y position")?;
            let heading_degrees = cur.number("heading in degrees")?;
            cur.finish()?;
            Ok(RawConfig {
                px,
                py,
                heading_degrees,
            })
        };

        let dup = |line: usize, col: usize, key: &str| DocError::Parse {
            line,
            col,
            msg: format!("duplicate key {key:?}"),
        };

        match key {
            "x" => {
                if x.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                x = Some(config_value(&mut cur)?);
            }
            "y" => {
                if y.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                y = Some(config_value(&mut cur)?);
            }
            "kappa_max" => {
                if kappa_max.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                let v = cur.number("kappa_max")?;
                cur.finish()?;
                if !(v > 0.0) {
                    return Err(DocError::Parse {
                        line: line_no,
                        col: key_col,
                        msg: format!("kappa_max must be positive, got {v}"),
                    });
                }
                kappa_max = Some(v);
            }
            "required_length" => {
                if required_length.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                let v = cur.number("required_length")?;
                cur.finish()?;
                if v < 0.0 {
                    return Err(DocError::Parse {
                        line: line_no,
                        col: key_col,
                        msg: format!("required_length must be non-negative, got {v}"),
                    });
                }
                required_length = Some(v);
            }
            "vertical_drop" => {
                if vertical_drop.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                let v = cur.number("vertical_drop")?;
                cur.finish()?;
                vertical_drop = Some(v);
            }
            "max_gradient" => {
                if max_gradient.is_some() {
                    return Err(dup(line_no, key_col, key));
                }
                let v = cur.number("max_gradient")?;
                cur.finish()?;
                if !(v > 0.0) {
                    return Err(DocError::Parse {
                        line: line_no,
                        col: key_col,
                        msg: format!("max_gradient must be positive, got {v}"),
                    });
                }
                max_gradient = Some(v);
            }
            "segment" => {
                let (kind_col, kind) = cur.word("segment kind (line|arc)")?;
                match kind {
                    "line" => {
                        let x1 = cur.number("x1")?;
                        let y1 = cur.number("y1")?;
                        let x2 = cur.number("x2")?;
                        let y2 = cur.number("y2")?;
                        cur.finish()?;
                        segments.push(PathSegment::Line(LineSeg::new(
                            Point::new(x1, y1),
                            Point::new(x2, y2),
                        )));
                    }
                    "arc" => {
                        let cx = cur.number("center x")?;
                        let cy = cur.number("center y")?;
                        let r = cur.number("radius")?;
                        let start = cur.number("start angle in degrees")?;
                        let sweep = cur.number("sweep in degrees")?;
                        cur.finish()?;
                        segments.push(PathSegment::Arc(ArcSeg::new(
                            Point::new(cx, cy),
                            r,
                            start.to_radians(),
                            sweep.to_radians(),
                        )));
                    }
                    other => {
                        return Err(DocError::Parse {
                            line: line_no,
                            col: kind_col,
                            msg: format!("unknown segment kind {other:?} (expected line|arc)"),
                        })
                    }
                }
            }
            other => {
                return Err(DocError::Parse {
                    line: line_no,
                    col: key_col,
                    msg: format!("unknown key {other:?}"),
                })
            }
        }
    }

    let x = x.ok_or_else(|| DocError::Schema("missing required key `x`".to_string()))?;
    let y = y.ok_or_else(|| DocError::Schema("missing required key `y`".to_string()))?;
    match (vertical_drop, max_gradient) {
        (Some(_), None) | (None, Some(_)) => {
            return Err(DocError::Schema(
                "vertical_drop and max_gradient must appear together".to_string(),
            ))
        }
        _ => {}
    }
    let doc = ProblemDocument {
        x,
        y,
        kappa_max: kappa_max.unwrap_or(1.0),
        required_length,
        gradient: vertical_drop.map(|vertical_drop| GradientSpec {
            vertical_drop,
            max_gradient: max_gradient.expect("paired above"),
        }),
        segments,
    };
    // The endpoint configurations must normalize.
    doc.instance()
        .map_err(|e| DocError::Schema(format!("invalid endpoint configuration: {e}")))?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_defaults() {
        let doc = parse_problem_document("x = 0 0 0\ny = 2 0 0\n").unwrap();
        assert_eq!(doc.kappa_max, 1.0);
        assert!(doc.required_length.is_none());
        assert!(doc.gradient.is_none());
        assert!(doc.segments.is_empty());
    }

    #[test]
    fn zero_kappa_is_schema_violation() {
        let err = parse_problem_document("x = 0 0 0\ny = 2 0 0\nkappa_max = 0\n").unwrap_err();
        match err {
            DocError::Parse { line, msg, .. } => {
                assert_eq!(line, 3);
                assert!(msg.contains("positive"));
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn unknown_key_rejected_with_anchor() {
        let err = parse_problem_document("x = 0 0 0\ny = 2 0 0\nfoo = 1\n").unwrap_err();
        assert_eq!(
            err,
            DocError::Parse {
                line: 3,
                col: 1,
                msg: "unknown key \"foo\"".to_string()
            }
        );
    }

    #[test]
    fn bad_number_has_column() {
        let err = parse_problem_document("x = 0 zero 0\ny = 2 0 0\n").unwrap_err();
        match err {
            DocError::Parse { line, col, msg } => {
                assert_eq!(line, 1);
                assert!(col > 4, "col {col}");
                assert!(msg.contains("zero"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn three_segment_path_round_trips_bit_identically() {
        let text = "x = 0 0 0\ny = 2 0 0\nsegment = arc 0 1 1 -90 45\nsegment = line 0.5 0.3 1.5 0.3\nsegment = arc 2 -1 1.5 90 -30\n";
        let doc = parse_problem_document(text).unwrap();
        assert_eq!(doc.segments.len(), 3);
        let emitted = doc.emit();
        let reparsed = parse_problem_document(&emitted).unwrap();
        assert_eq!(emitted, reparsed.emit());
    }

    #[test]
    fn gradient_keys_must_pair() {
        let err = parse_problem_document("x = 0 0 0\ny = 2 0 0\nvertical_drop = 70\n").unwrap_err();
        assert!(matches!(err, DocError::Schema(_)));
    }
}
