//! SVG scene rendering: adjacent circles, the region with shaded
//! subregions and dividing lines, inflection markers, and candidate paths
//! color-coded by verdict. Output bytes are deterministic (same formatter
//! as the reports, fixed element order).

use bcpath::omega::{construct_region, FacePiece};
use bcpath::{
    adjacent_circles, candidate_set, classify_homotopy, ArcSeg, CurvaturePath, PathSegment, Point,
};

use crate::doc::ProblemDocument;
use crate::fmt::fmt12;
use crate::report::ReportDocument;

use std::f64::consts::PI;

const TRAPPED: &str = "#c0392b";
const FREE: &str = "#1e8e3e";
const UNRESOLVED: &str = "#7f8c8d";
const FACE_FILLS: [&str; 3] = ["#dbe9f4", "#f4e8db", "#e3f4db"];

struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Point) {
        self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn add_circle(&mut self, center: Point, r: f64) {
        self.add(Point::new(center.x - r, center.y - r));
        self.add(Point::new(center.x + r, center.y + r));
    }

    fn add_path(&mut self, path: &CurvaturePath) {
        let n = (path.total_length() / 0.05).ceil().max(2.0) as usize;
        for i in 0..=n {
            self.add(path.point_at(path.total_length() * i as f64 / n as f64));
        }
    }
}

fn pt(p: Point) -> String {
    // SVG y grows downward; mirror the plane.
    format!("{},{}", fmt12(p.x), fmt12(-p.y))
}

fn arc_cmds(a: &ArcSeg) -> String {
    // Split wide arcs so each piece stays under a half turn of headroom.
    let pieces = if a.sweep.abs() > 1.5 * PI { 2 } else { 1 };
    let mut out = String::new();
    for k in 0..pieces {
        let s0 = a.length() * k as f64 / pieces as f64;
        let s1 = a.length() * (k + 1) as f64 / pieces as f64;
        let end = a.point_at(s1);
        let sweep_piece = a.sweep / pieces as f64;
        let large = if sweep_piece.abs() > PI { 1 } else { 0 };
        // Mirrored y flips the rotation sense.
        let flag = if a.sweep > 0.0 { 0 } else { 1 };
        let _ = s0;
        out.push_str(&format!(
            " A {} {} 0 {} {} {}",
            fmt12(a.radius),
            fmt12(a.radius),
            large,
            flag,
            pt(end)
        ));
    }
    out
}

fn path_d(path: &CurvaturePath) -> String {
    let mut d = format!("M {}", pt(path.segments()[0].start_point()));
    for seg in path.segments() {
        match seg {
            PathSegment::Line(l) => d.push_str(&format!(" L {}", pt(l.end))),
            PathSegment::Arc(a) => d.push_str(&arc_cmds(a)),
        }
    }
    d
}

fn face_d(pieces: &[FacePiece]) -> String {
    let start = match pieces.first() {
        Some(FacePiece::Arc(a)) => a.start_point(),
        Some(FacePiece::Chord(l)) => l.start,
        None => return String::new(),
    };
    let mut d = format!("M {}", pt(start));
    for piece in pieces {
        match piece {
            FacePiece::Arc(a) => d.push_str(&arc_cmds(a)),
            FacePiece::Chord(l) => d.push_str(&format!(" L {}", pt(l.end))),
        }
    }
    d.push_str(" Z");
    d
}

fn verdict_color(label: &str) -> &'static str {
    if label == "trapped" {
        TRAPPED
    } else if label.starts_with("free") {
        FREE
    } else {
        UNRESOLVED
    }
}

/// Renders the scene for a document and its report.
pub fn render_scene(doc: &ProblemDocument, report: &ReportDocument) -> String {
    let instance = doc.instance().expect("validated at parse time");
    let (xl, xr) = adjacent_circles(instance.x());
    let (yl, yr) = adjacent_circles(instance.y());
    let region = construct_region(&instance);
    let set = candidate_set(&instance).expect("distinct configurations");

    let mut bounds = Bounds::new();
    for c in [&xl, &xr, &yl, &yr] {
        bounds.add_circle(c.center, c.radius);
    }
    if let Some(r) = &region {
        let (u, l) = r.middle_circles();
        bounds.add_circle(u.center, u.radius);
        bounds.add_circle(l.center, l.radius);
    }
    for cand in set.entries() {
        bounds.add_path(&cand.path);
    }
    if let Some(p) = doc.path_under_test() {
        bounds.add_path(&p);
    }

    let w = (bounds.max.x - bounds.min.x).max(1e-6);
    let h = (bounds.max.y - bounds.min.y).max(1e-6);
    let margin = 0.1 * w.max(h);
    let view = format!(
        "{} {} {} {}",
        fmt12(bounds.min.x - margin),
        fmt12(-(bounds.max.y + margin)),
        fmt12(w + 2.0 * margin),
        fmt12(h + 2.0 * margin)
    );
    let stroke = 0.012 * w.max(h);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\" width=\"900\">\n"
    ));

    let circle = |c: &bcpath::Circle| {
        format!(
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
            fmt12(c.center.x),
            fmt12(-c.center.y),
            fmt12(c.radius)
        )
    };

    svg.push_str(&format!(
        "  <g id=\"adjacent-circles\" fill=\"none\" stroke=\"#9aa7b1\" stroke-width=\"{}\">\n",
        fmt12(stroke * 0.6)
    ));
    for c in [&xl, &xr, &yl, &yr] {
        svg.push_str(&circle(c));
    }
    svg.push_str("  </g>\n");

    if let Some(r) = &region {
        let (u, l) = r.middle_circles();
        svg.push_str(&format!(
            "  <g id=\"middle-circles\" fill=\"none\" stroke=\"#c49a6c\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\">\n",
            fmt12(stroke * 0.6),
            fmt12(stroke * 2.0),
            fmt12(stroke * 2.0)
        ));
        svg.push_str(&circle(u));
        svg.push_str(&circle(l));
        svg.push_str("  </g>\n");

        svg.push_str("  <g id=\"region\">\n");
        for (k, face) in r.faces().iter().enumerate() {
            if face.is_empty() {
                continue;
            }
            svg.push_str(&format!(
                "    <path id=\"subregion-r{}\" d=\"{}\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"none\"/>\n",
                k + 1,
                face_d(face),
                FACE_FILLS[k]
            ));
        }
        // Boundary arcs drawn as one stroked chain.
        let mut d = format!("M {}", pt(r.boundary()[0].arc.start_point()));
        for b in r.boundary() {
            if b.arc.length() <= 1e-12 {
                continue;
            }
            d.push_str(&arc_cmds(&b.arc));
        }
        d.push_str(" Z");
        svg.push_str(&format!(
            "    <path id=\"region-boundary\" d=\"{d}\" fill=\"none\" stroke=\"#39506b\" stroke-width=\"{}\"/>\n",
            fmt12(stroke)
        ));

        let (l1, l2) = r.dividers();
        svg.push_str(&format!(
            "    <g id=\"dividers\" stroke=\"#39506b\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\">\n",
            fmt12(stroke * 0.5),
            fmt12(stroke),
            fmt12(stroke)
        ));
        for l in [l1, l2] {
            svg.push_str(&format!(
                "      <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                fmt12(l.a.x),
                fmt12(-l.a.y),
                fmt12(l.b.x),
                fmt12(-l.b.y)
            ));
        }
        svg.push_str("    </g>\n");

        let side = stroke * 2.0;
        svg.push_str("    <g id=\"inflections\" fill=\"#39506b\">\n");
        for inf in r.inflections() {
            svg.push_str(&format!(
                "      <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
                fmt12(inf.point.x - side / 2.0),
                fmt12(-inf.point.y - side / 2.0),
                fmt12(side),
                fmt12(side)
            ));
        }
        svg.push_str("    </g>\n  </g>\n");
    }

    svg.push_str(&format!(
        "  <g id=\"candidates\" fill=\"none\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\">\n",
        fmt12(stroke),
        fmt12(stroke * 3.0),
        fmt12(stroke * 1.5)
    ));
    for (cand, row) in set.entries().iter().zip(&report.candidates) {
        let instance_verdict = classify_homotopy(&instance, &cand.path).label();
        debug_assert_eq!(instance_verdict, row.verdict);
        svg.push_str(&format!(
            "    <path id=\"candidate-{}\" d=\"{}\" stroke=\"{}\"><title>{} {}</title></path>\n",
            cand.word,
            path_d(&cand.path),
            verdict_color(&row.verdict),
            cand.word,
            row.verdict
        ));
    }
    svg.push_str("  </g>\n");

    if let Some(p) = doc.path_under_test() {
        svg.push_str(&format!(
            "  <g id=\"path-under-test\" fill=\"none\" stroke=\"#6a1b9a\" stroke-width=\"{}\">\n",
            fmt12(stroke)
        ));
        svg.push_str(&format!("    <path d=\"{}\"/>\n", path_d(&p)));
        svg.push_str("  </g>\n");
    }

    // Endpoint heading glyphs.
    svg.push_str("  <g id=\"endpoints\" fill=\"#1b2a38\">\n");
    for cfg in [instance.x(), instance.y()] {
        let tip = cfg.position + cfg.heading() * (stroke * 10.0);
        let left = cfg.position + cfg.left_normal() * (stroke * 2.5);
        let right = cfg.position + cfg.right_normal() * (stroke * 2.5);
        svg.push_str(&format!(
            "    <path d=\"M {} L {} L {} Z\"/>\n",
            pt(left),
            pt(tip),
            pt(right)
        ));
    }
    svg.push_str("  </g>\n</svg>\n");
    svg
}
