//! Exact intersection primitives between arc and line segments.
//!
//! Results carry the arc-length parameters on both operands so callers can
//! map hits back into path coordinates. Coincident overlaps (co-circular or
//! collinear runs) are reported separately from isolated hits.

use crate::geom::{ccw_delta, cw_delta, Point, Vec2};
use crate::path::{ArcSeg, LineSeg, PathSegment};

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    /// Arc length along the first operand.
    pub s1: f64,
    /// Arc length along the second operand.
    pub s2: f64,
    pub point: Point,
    /// True when the contact is tangential rather than transversal.
    pub tangential: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SegOverlap {
    None,
    Hits(Vec<Hit>),
    /// The operands share geometry over a positive-length run.
    Coincident {
        range1: (f64, f64),
        range2: (f64, f64),
    },
}

pub fn segment_hits(a: &PathSegment, b: &PathSegment) -> SegOverlap {
    match (a, b) {
        (PathSegment::Line(l1), PathSegment::Line(l2)) => line_line(l1, l2),
        (PathSegment::Line(l), PathSegment::Arc(arc)) => match line_arc(l, arc) {
            SegOverlap::Hits(h) => SegOverlap::Hits(h),
            other => other,
        },
        (PathSegment::Arc(arc), PathSegment::Line(l)) => match line_arc(l, arc) {
            SegOverlap::Hits(hits) => SegOverlap::Hits(
                hits.into_iter()
                    .map(|h| Hit {
                        s1: h.s2,
                        s2: h.s1,
                        ..h
                    })
                    .collect(),
            ),
            SegOverlap::Coincident { range1, range2 } => SegOverlap::Coincident {
                range1: range2,
                range2: range1,
            },
            SegOverlap::None => SegOverlap::None,
        },
        (PathSegment::Arc(a1), PathSegment::Arc(a2)) => arc_arc(a1, a2),
    }
}

fn line_line(a: &LineSeg, b: &LineSeg) -> SegOverlap {
    let d1 = a.end - a.start;
    let d2 = b.end - b.start;
    let denom = d1.cross(d2);
    let offset = b.start - a.start;
    if denom.abs() <= 1e-12 * d1.norm() * d2.norm() {
        // Parallel. Collinear overlap is a coincidence run.
        if offset.cross(d1).abs() > EPS * d1.norm().max(1.0) {
            return SegOverlap::None;
        }
        let u = d1.normalized().expect("positive length");
        let t0 = offset.dot(u);
        let t1 = (b.end - a.start).dot(u);
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        let lo_c = lo.max(0.0);
        let hi_c = hi.min(a.length());
        if hi_c - lo_c > EPS {
            let b_at = |t: f64| (a.start + u * t - b.start).dot(b.dir());
            return SegOverlap::Coincident {
                range1: (lo_c, hi_c),
                range2: (b_at(lo_c).min(b_at(hi_c)), b_at(lo_c).max(b_at(hi_c))),
            };
        }
        if (hi_c - lo_c).abs() <= EPS && hi_c >= -EPS && lo_c <= a.length() + EPS && hi >= -EPS && lo <= a.length() + EPS && hi_c >= lo_c {
            // Endpoint touch of collinear segments.
            let t = 0.5 * (lo_c + hi_c);
            if t >= -EPS && t <= a.length() + EPS && lo <= t + EPS && t <= hi + EPS {
                let p = a.start + u * t.clamp(0.0, a.length());
                let s2 = (p - b.start).dot(b.dir());
                if (-EPS..=b.length() + EPS).contains(&s2) {
                    return SegOverlap::Hits(vec![Hit {
                        s1: t.clamp(0.0, a.length()),
                        s2: s2.clamp(0.0, b.length()),
                        point: p,
                        tangential: true,
                    }]);
                }
            }
        }
        return SegOverlap::None;
    }
    let t = offset.cross(d2) / denom;
    let u = offset.cross(d1) / denom;
    if !(-1e-9..=1.0 + 1e-9).contains(&t) || !(-1e-9..=1.0 + 1e-9).contains(&u) {
        return SegOverlap::None;
    }
    let point = a.start + d1 * t;
    SegOverlap::Hits(vec![Hit {
        s1: (t * a.length()).clamp(0.0, a.length()),
        s2: (u * b.length()).clamp(0.0, b.length()),
        point,
        tangential: false,
    }])
}

fn line_arc(l: &LineSeg, arc: &ArcSeg) -> SegOverlap {
    let d = l.dir();
    let f = l.start - arc.center;
    // |f + t d|^2 = r^2 with |d| = 1.
    let b = f.dot(d);
    let c = f.dot(f) - arc.radius * arc.radius;
    let disc = b * b - c;
    let scale = arc.radius.max(1.0);
    let mut hits = Vec::new();
    if disc < -EPS * scale {
        return SegOverlap::None;
    }
    let roots: Vec<(f64, bool)> = if disc.abs() <= EPS * scale {
        vec![(-b, true)]
    } else {
        let sq = disc.sqrt();
        vec![(-b - sq, false), (-b + sq, false)]
    };
    for (t, tangential) in roots {
        if t < -EPS || t > l.length() + EPS {
            continue;
        }
        let p = l.start + d * t;
        let angle = (p - arc.center).angle();
        if let Some(s2) = arc_param(arc, angle) {
            hits.push(Hit {
                s1: t.clamp(0.0, l.length()),
                s2,
                point: p,
                tangential,
            });
        }
    }
    if hits.is_empty() {
        SegOverlap::None
    } else {
        SegOverlap::Hits(hits)
    }
}

fn arc_arc(a: &ArcSeg, b: &ArcSeg) -> SegOverlap {
    let d = a.center.distance(b.center);
    let same_circle = d <= EPS && (a.radius - b.radius).abs() <= EPS;
    if same_circle {
        return cocircular_overlap(a, b);
    }
    if d > a.radius + b.radius + EPS || d < (a.radius - b.radius).abs() - EPS {
        return SegOverlap::None;
    }
    let u = (b.center - a.center) * (1.0 / d);
    let tangential_outer = (d - (a.radius + b.radius)).abs() <= EPS;
    let tangential_inner = (d - (a.radius - b.radius).abs()).abs() <= EPS;
    let mut points = Vec::new();
    if tangential_outer || tangential_inner {
        let sign = if tangential_outer || a.radius >= b.radius {
            1.0
        } else {
            -1.0
        };
        points.push((a.center + u * (sign * a.radius), true));
    } else {
        let alpha = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
        let h2 = a.radius * a.radius - alpha * alpha;
        let h = h2.max(0.0).sqrt();
        let base = a.center + u * alpha;
        let n = u.rot90();
        points.push((base + n * h, false));
        points.push((base + n * (-h), false));
    }
    let mut hits = Vec::new();
    for (p, tangential) in points {
        let ang_a = (p - a.center).angle();
        let ang_b = (p - b.center).angle();
        if let (Some(s1), Some(s2)) = (arc_param(a, ang_a), arc_param(b, ang_b)) {
            hits.push(Hit {
                s1,
                s2,
                point: p,
                tangential,
            });
        }
    }
    if hits.is_empty() {
        SegOverlap::None
    } else {
        SegOverlap::Hits(hits)
    }
}

/// Angular-interval overlap of arcs on the same circle. A positive-length
/// overlap is a coincidence run; endpoint touches come back as tangential
/// hits.
fn cocircular_overlap(a: &ArcSeg, b: &ArcSeg) -> SegOverlap {
    let r = a.radius;
    // Work on the circle parametrized CCW from a's traversal start.
    let a_lo = if a.sweep >= 0.0 { a.start_angle } else { a.end_angle() };
    let a_len = a.sweep.abs();
    let b_lo = if b.sweep >= 0.0 { b.start_angle } else { b.end_angle() };
    let b_len = b.sweep.abs();
    let rel = ccw_delta(a_lo, b_lo);
    let mut best: Option<(f64, f64)> = None; // overlap in a's CCW coordinates
    let mut touches: Vec<f64> = Vec::new();
    for shift in [rel, rel - std::f64::consts::TAU] {
        let lo = shift.max(0.0);
        let hi = (shift + b_len).min(a_len);
        if hi - lo > EPS / r {
            best = Some(match best {
                None => (lo, hi),
                Some(cur) if hi - lo > cur.1 - cur.0 => (lo, hi),
                Some(cur) => cur,
            });
        } else if (hi - lo).abs() <= EPS / r && hi >= lo - EPS / r && lo <= a_len + EPS && hi >= -EPS {
            touches.push(0.5 * (lo + hi));
        }
    }
    if let Some((lo, hi)) = best {
        let to_a_param = |ang_off: f64| {
            if a.sweep >= 0.0 {
                r * ang_off
            } else {
                a.length() - r * ang_off
            }
        };
        let to_b_param = |ang_off: f64| {
            let off_b = ang_off - ccw_delta(a_lo, b_lo);
            let off_b = if off_b < -EPS {
                off_b + std::f64::consts::TAU
            } else {
                off_b
            };
            if b.sweep >= 0.0 {
                r * off_b
            } else {
                b.length() - r * off_b
            }
        };
        let (p1a, p2a) = (to_a_param(lo), to_a_param(hi));
        let (p1b, p2b) = (to_b_param(lo), to_b_param(hi));
        return SegOverlap::Coincident {
            range1: (p1a.min(p2a), p1a.max(p2a)),
            range2: (p1b.min(p2b).clamp(0.0, b.length()), p1b.max(p2b).clamp(0.0, b.length())),
        };
    }
    let mut hits = Vec::new();
    for off in touches {
        let ang = a_lo + off;
        let p = a.point_at_angle(ang);
        if let (Some(s1), Some(s2)) = (arc_param(a, ang), arc_param(b, ang)) {
            hits.push(Hit {
                s1,
                s2,
                point: p,
                tangential: true,
            });
        }
    }
    if hits.is_empty() {
        SegOverlap::None
    } else {
        SegOverlap::Hits(hits)
    }
}

/// Arc length of the angle along the arc's traversal, or `None` when the
/// angle falls outside the swept interval (with a small slack that is then
/// clamped).
pub fn arc_param(arc: &ArcSeg, angle: f64) -> Option<f64> {
    let slack = 1e-7;
    if arc.sweep >= 0.0 {
        let delta = ccw_delta(arc.start_angle, angle);
        if delta <= arc.sweep + slack {
            return Some((arc.radius * delta).min(arc.length()));
        }
        if cw_delta(arc.start_angle, angle) <= slack {
            return Some(0.0);
        }
        None
    } else {
        let delta = cw_delta(arc.start_angle, angle);
        if delta <= -arc.sweep + slack {
            return Some((arc.radius * delta).min(arc.length()));
        }
        if ccw_delta(arc.start_angle, angle) <= slack {
            return Some(0.0);
        }
        None
    }
}

/// Intersections of the ray `origin + t dir`, t > 0, with an arc. Returns
/// (t, tangential, near_arc_endpoint) triples.
pub fn ray_arc_hits(origin: Point, dir: Vec2, arc: &ArcSeg) -> Vec<(f64, bool, bool)> {
    let f = origin - arc.center;
    let b = f.dot(dir);
    let c = f.dot(f) - arc.radius * arc.radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let mut out = Vec::new();
    let tangential = disc <= 1e-9 * arc.radius.max(1.0);
    for t in [-b - sq, -b + sq] {
        if t <= 1e-12 {
            continue;
        }
        let p = origin + dir * t;
        let ang = (p - arc.center).angle();
        if let Some(s) = arc_param(arc, ang) {
            let near_end = s <= 1e-7 || s >= arc.length() - 1e-7;
            out.push((t, tangential, near_end));
        }
        if tangential {
            break; // double root: report once
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn line_line_crossing() {
        let a = LineSeg::new(Point::new(0.0, 0.0), Point::new(2.0, 2.0));
        let b = LineSeg::new(Point::new(0.0, 2.0), Point::new(2.0, 0.0));
        match segment_hits(&PathSegment::Line(a), &PathSegment::Line(b)) {
            SegOverlap::Hits(h) => {
                assert_eq!(h.len(), 1);
                assert!(h[0].point.distance(Point::new(1.0, 1.0)) <= 1e-12);
            }
            other => panic!("expected hit, got {other:?}"),
        }
    }

    #[test]
    fn line_arc_tangent_and_crossing() {
        let arc = ArcSeg::new(Point::new(0.0, 1.0), 1.0, -FRAC_PI_2, PI);
        // Tangent along the x-axis at the origin.
        let tangent = LineSeg::new(Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
        match segment_hits(&PathSegment::Line(tangent), &PathSegment::Arc(arc)) {
            SegOverlap::Hits(h) => {
                assert_eq!(h.len(), 1);
                assert!(h[0].tangential);
                assert!(h[0].point.distance(Point::new(0.0, 0.0)) <= 1e-6);
            }
            other => panic!("expected tangent hit, got {other:?}"),
        }
        // The arc spans the right half-circle; a horizontal chord through
        // the center hits it once, a vertical chord through its interior
        // twice.
        let chord = LineSeg::new(Point::new(-2.0, 1.0), Point::new(2.0, 1.0));
        match segment_hits(&PathSegment::Line(chord), &PathSegment::Arc(arc)) {
            SegOverlap::Hits(h) => {
                assert_eq!(h.len(), 1);
                assert!(h[0].point.distance(Point::new(1.0, 1.0)) <= 1e-9);
            }
            other => panic!("expected one hit, got {other:?}"),
        }
        let vertical = LineSeg::new(Point::new(0.5, -2.0), Point::new(0.5, 2.0));
        match segment_hits(&PathSegment::Line(vertical), &PathSegment::Arc(arc)) {
            SegOverlap::Hits(h) => assert_eq!(h.len(), 2),
            other => panic!("expected two hits, got {other:?}"),
        }
    }

    #[test]
    fn cocircular_arcs_share_endpoints_only() {
        let upper = ArcSeg::new(Point::new(0.0, 0.0), 1.0, 0.0, PI);
        let lower = ArcSeg::new(Point::new(0.0, 0.0), 1.0, PI, PI);
        match segment_hits(&PathSegment::Arc(upper), &PathSegment::Arc(lower)) {
            SegOverlap::Hits(h) => {
                assert_eq!(h.len(), 2);
                assert!(h.iter().all(|hit| hit.tangential));
            }
            other => panic!("expected endpoint touches, got {other:?}"),
        }
    }

    #[test]
    fn cocircular_arcs_overlap_run() {
        let a = ArcSeg::new(Point::new(0.0, 0.0), 1.0, 0.0, PI);
        let b = ArcSeg::new(Point::new(0.0, 0.0), 1.0, FRAC_PI_2, PI);
        match segment_hits(&PathSegment::Arc(a), &PathSegment::Arc(b)) {
            SegOverlap::Coincident { range1, range2 } => {
                assert!((range1.0 - FRAC_PI_2).abs() <= 1e-9);
                assert!((range1.1 - PI).abs() <= 1e-9);
                assert!((range2.1 - range2.0 - FRAC_PI_2).abs() <= 1e-9);
            }
            other => panic!("expected coincidence, got {other:?}"),
        }
    }

    #[test]
    fn distinct_circles_cross_twice() {
        let a = ArcSeg::new(Point::new(0.0, 0.0), 1.0, -PI, 2.0 * PI - 1e-12);
        let b = ArcSeg::new(Point::new(1.0, 0.0), 1.0, -PI, 2.0 * PI - 1e-12);
        match segment_hits(&PathSegment::Arc(a), &PathSegment::Arc(b)) {
            SegOverlap::Hits(h) => {
                assert_eq!(h.len(), 2);
                for hit in h {
                    assert!((hit.point.distance(Point::new(0.0, 0.0)) - 1.0).abs() <= 1e-9);
                    assert!((hit.point.distance(Point::new(1.0, 0.0)) - 1.0).abs() <= 1e-9);
                }
            }
            other => panic!("expected two hits, got {other:?}"),
        }
    }

    #[test]
    fn ray_hits_filter_by_span() {
        let arc = ArcSeg::new(Point::new(0.0, 1.0), 1.0, -FRAC_PI_2, PI / 3.0);
        let hits = ray_arc_hits(Point::new(0.5, -2.0), Vec2::new(0.0, 1.0), &arc);
        assert_eq!(hits.len(), 1);
        let none = ray_arc_hits(Point::new(-0.5, -2.0), Vec2::new(0.0, 1.0), &arc);
        assert!(none.is_empty());
    }
}
