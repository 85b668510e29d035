//! Representation and analysis of bounded-curvature paths: C1 chains of
//! circular arcs (radius >= 1) and line segments, parametrized by arc
//! length.
//!
//! The chain representation keeps every detector exact: the turning map is
//! piecewise linear with slopes equal to the signed curvature, so parallel
//! tangents, long arcs, and self-intersections are found by closed-form
//! case analysis instead of sampling.

use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::geom::{
    ccw_delta, cw_delta, Configuration, Orientation, Point, ProblemInstance, Similarity, Vec2,
};

/// Joint and endpoint tolerance for path validity.
pub const PATH_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("path has no segments")]
    Empty,
    #[error("segment {index}: arc radius {radius} is below the curvature bound")]
    RadiusBelowBound { index: usize, radius: f64 },
    #[error("segment {index}: zero-length segment")]
    ZeroLength { index: usize },
    #[error("segment {index}: arc sweep {sweep} exceeds a full turn")]
    SweepTooLarge { index: usize, sweep: f64 },
    #[error("joint {index}: position gap {position_gap:.3e}, tangent gap {tangent_gap:.3e}")]
    JointMismatch {
        index: usize,
        position_gap: f64,
        tangent_gap: f64,
    },
}

// ---------------------------------------------------------------------------
// Segments
// ---------------------------------------------------------------------------

/// Circular arc: center, radius, start angle, and signed sweep
/// (positive = counterclockwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSeg {
    pub center: Point,
    pub radius: f64,
    pub start_angle: f64,
    pub sweep: f64,
}

impl ArcSeg {
    pub fn new(center: Point, radius: f64, start_angle: f64, sweep: f64) -> Self {
        ArcSeg {
            center,
            radius,
            start_angle,
            sweep,
        }
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep.abs()
    }

    pub fn end_angle(&self) -> f64 {
        self.start_angle + self.sweep
    }

    pub fn angle_at(&self, s: f64) -> f64 {
        self.start_angle + self.sweep.signum() * s / self.radius
    }

    pub fn point_at_angle(&self, a: f64) -> Point {
        self.center + Vec2::from_angle(a) * self.radius
    }

    pub fn point_at(&self, s: f64) -> Point {
        self.point_at_angle(self.angle_at(s))
    }

    pub fn tangent_at(&self, s: f64) -> Vec2 {
        let a = self.angle_at(s);
        let radial = Vec2::from_angle(a);
        if self.sweep >= 0.0 {
            radial.rot90()
        } else {
            radial.rot_neg90()
        }
    }

    pub fn start_point(&self) -> Point {
        self.point_at_angle(self.start_angle)
    }

    pub fn end_point(&self) -> Point {
        self.point_at_angle(self.end_angle())
    }

    pub fn signed_curvature(&self) -> f64 {
        self.sweep.signum() / self.radius
    }

    pub fn orientation(&self) -> Orientation {
        if self.sweep >= 0.0 {
            Orientation::Left
        } else {
            Orientation::Right
        }
    }

    /// True when `a` lies within the swept angular interval, padded by
    /// `slack` radians on both ends.
    pub fn contains_angle(&self, a: f64, slack: f64) -> bool {
        if self.sweep >= 0.0 {
            ccw_delta(self.start_angle, a) <= self.sweep + slack
                || cw_delta(self.start_angle, a) <= slack
        } else {
            cw_delta(self.start_angle, a) <= -self.sweep + slack
                || ccw_delta(self.start_angle, a) <= slack
        }
    }

    fn split_at(&self, s: f64) -> (ArcSeg, ArcSeg) {
        let a = self.angle_at(s);
        let first = ArcSeg::new(self.center, self.radius, self.start_angle, a - self.start_angle);
        let second = ArcSeg::new(self.center, self.radius, a, self.end_angle() - a);
        (first, second)
    }

    pub fn translated(&self, v: Vec2) -> ArcSeg {
        ArcSeg::new(self.center + v, self.radius, self.start_angle, self.sweep)
    }

    pub fn transformed(&self, t: &Similarity) -> ArcSeg {
        ArcSeg::new(
            t.apply_point(self.center),
            self.radius * t.scale,
            self.start_angle + t.rotation,
            self.sweep,
        )
    }
}

/// Straight segment between two distinct points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSeg {
    pub start: Point,
    pub end: Point,
}

impl LineSeg {
    pub fn new(start: Point, end: Point) -> Self {
        LineSeg { start, end }
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }

    pub fn dir(&self) -> Vec2 {
        (self.end - self.start).normalized().unwrap_or(Vec2::new(1.0, 0.0))
    }

    pub fn point_at(&self, s: f64) -> Point {
        self.start + self.dir() * s
    }

    fn split_at(&self, s: f64) -> (LineSeg, LineSeg) {
        let m = self.point_at(s);
        (LineSeg::new(self.start, m), LineSeg::new(m, self.end))
    }

    pub fn translated(&self, v: Vec2) -> LineSeg {
        LineSeg::new(self.start + v, self.end + v)
    }

    pub fn transformed(&self, t: &Similarity) -> LineSeg {
        LineSeg::new(t.apply_point(self.start), t.apply_point(self.end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSegment {
    Arc(ArcSeg),
    Line(LineSeg),
}

impl PathSegment {
    pub fn length(&self) -> f64 {
        match self {
            PathSegment::Arc(a) => a.length(),
            PathSegment::Line(l) => l.length(),
        }
    }

    pub fn start_point(&self) -> Point {
        match self {
            PathSegment::Arc(a) => a.start_point(),
            PathSegment::Line(l) => l.start,
        }
    }

    pub fn end_point(&self) -> Point {
        match self {
            PathSegment::Arc(a) => a.end_point(),
            PathSegment::Line(l) => l.end,
        }
    }

    pub fn point_at(&self, s: f64) -> Point {
        match self {
            PathSegment::Arc(a) => a.point_at(s),
            PathSegment::Line(l) => l.point_at(s),
        }
    }

    pub fn tangent_at(&self, s: f64) -> Vec2 {
        match self {
            PathSegment::Arc(a) => a.tangent_at(s),
            PathSegment::Line(l) => l.dir(),
        }
    }

    pub fn start_tangent(&self) -> Vec2 {
        self.tangent_at(0.0)
    }

    pub fn end_tangent(&self) -> Vec2 {
        self.tangent_at(self.length())
    }

    /// Signed curvature in the segment interior (0 for lines).
    pub fn signed_curvature(&self) -> f64 {
        match self {
            PathSegment::Arc(a) => a.signed_curvature(),
            PathSegment::Line(_) => 0.0,
        }
    }

    pub fn split_at(&self, s: f64) -> (PathSegment, PathSegment) {
        match self {
            PathSegment::Arc(a) => {
                let (x, y) = a.split_at(s);
                (PathSegment::Arc(x), PathSegment::Arc(y))
            }
            PathSegment::Line(l) => {
                let (x, y) = l.split_at(s);
                (PathSegment::Line(x), PathSegment::Line(y))
            }
        }
    }

    pub fn translated(&self, v: Vec2) -> PathSegment {
        match self {
            PathSegment::Arc(a) => PathSegment::Arc(a.translated(v)),
            PathSegment::Line(l) => PathSegment::Line(l.translated(v)),
        }
    }

    pub fn transformed(&self, t: &Similarity) -> PathSegment {
        match self {
            PathSegment::Arc(a) => PathSegment::Arc(a.transformed(t)),
            PathSegment::Line(l) => PathSegment::Line(l.transformed(t)),
        }
    }

    fn invariant_error(&self, index: usize) -> Option<PathError> {
        match self {
            PathSegment::Arc(a) => {
                if a.radius < 1.0 - 1e-12 {
                    Some(PathError::RadiusBelowBound {
                        index,
                        radius: a.radius,
                    })
                } else if a.sweep.abs() <= 1e-12 {
                    Some(PathError::ZeroLength { index })
                } else if a.sweep.abs() > TAU + 1e-9 {
                    Some(PathError::SweepTooLarge {
                        index,
                        sweep: a.sweep,
                    })
                } else {
                    None
                }
            }
            PathSegment::Line(l) => {
                if l.length() <= 1e-12 {
                    Some(PathError::ZeroLength { index })
                } else {
                    None
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// C1 chain of arcs and line segments, parametrized by arc length.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePath {
    segments: Vec<PathSegment>,
    cum: Vec<f64>,
    total: f64,
}

impl CurvaturePath {
    /// Builds a path, checking segment invariants and C1 joints.
    pub fn new(segments: Vec<PathSegment>) -> Result<Self, PathError> {
        if segments.is_empty() {
            return Err(PathError::Empty);
        }
        for (i, seg) in segments.iter().enumerate() {
            if let Some(e) = seg.invariant_error(i) {
                return Err(e);
            }
        }
        for i in 0..segments.len() - 1 {
            let position_gap = segments[i].end_point().distance(segments[i + 1].start_point());
            let tangent_gap = (segments[i].end_tangent() - segments[i + 1].start_tangent()).norm();
            if position_gap > PATH_EPS || tangent_gap > PATH_EPS {
                return Err(PathError::JointMismatch {
                    index: i,
                    position_gap,
                    tangent_gap,
                });
            }
        }
        Ok(Self::from_segments_unchecked(segments))
    }

    /// Builds a path without invariant checks. Used when ingesting external
    /// data whose defects `validate_path` is supposed to report.
    pub fn from_segments_unchecked(segments: Vec<PathSegment>) -> Self {
        let mut cum = Vec::with_capacity(segments.len() + 1);
        let mut total = 0.0;
        cum.push(0.0);
        for seg in &segments {
            total += seg.length();
            cum.push(total);
        }
        CurvaturePath {
            segments,
            cum,
            total,
        }
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn total_length(&self) -> f64 {
        self.total
    }

    /// Index of the segment containing arc length `s`, and the local offset.
    pub fn segment_at(&self, s: f64) -> (usize, f64) {
        let s = s.clamp(0.0, self.total);
        // cum is sorted; find the segment whose interval contains s.
        let mut idx = match self
            .cum
            .binary_search_by(|c| c.partial_cmp(&s).expect("finite"))
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if idx >= self.segments.len() {
            idx = self.segments.len() - 1;
        }
        (idx, s - self.cum[idx])
    }

    pub fn point_at(&self, s: f64) -> Point {
        let (i, local) = self.segment_at(s);
        self.segments[i].point_at(local)
    }

    pub fn tangent_at(&self, s: f64) -> Vec2 {
        let (i, local) = self.segment_at(s);
        self.segments[i].tangent_at(local)
    }

    pub fn start_config(&self) -> Configuration {
        Configuration::new(self.segments[0].start_point(), self.segments[0].start_tangent())
            .expect("segment tangents are unit")
    }

    pub fn end_config(&self) -> Configuration {
        let last = self.segments.last().expect("non-empty");
        Configuration::new(last.end_point(), last.end_tangent()).expect("segment tangents are unit")
    }

    /// Segments covering `[from, to]`, splitting at the cut parameters.
    /// Zero-length slivers at the cuts are dropped.
    pub fn subpath_segments(&self, from: f64, to: f64) -> Vec<PathSegment> {
        assert!(from <= to + 1e-12);
        let mut out = Vec::new();
        if to - from <= 1e-12 {
            return out;
        }
        let (i0, l0) = self.segment_at(from);
        let (i1, l1) = self.segment_at(to);
        for i in i0..=i1 {
            let seg = self.segments[i];
            let len = seg.length();
            let lo = if i == i0 { l0 } else { 0.0 };
            let hi = if i == i1 { l1 } else { len };
            if hi - lo <= 1e-12 {
                continue;
            }
            let tail = if lo > 1e-12 { seg.split_at(lo).1 } else { seg };
            let keep = hi - lo;
            let piece = if keep < tail.length() - 1e-12 {
                tail.split_at(keep).0
            } else {
                tail
            };
            out.push(piece);
        }
        out
    }

    pub fn translated(&self, v: Vec2) -> CurvaturePath {
        Self::from_segments_unchecked(self.segments.iter().map(|s| s.translated(v)).collect())
    }

    pub fn transformed(&self, t: &Similarity) -> CurvaturePath {
        Self::from_segments_unchecked(self.segments.iter().map(|s| s.transformed(t)).collect())
    }
}

/// Incremental construction helper: appends segments continuing from the
/// current configuration, so the result is C1 by construction.
#[derive(Debug, Clone)]
pub struct PathBuilder {
    at: Configuration,
    segments: Vec<PathSegment>,
}

impl PathBuilder {
    pub fn new(start: Configuration) -> Self {
        PathBuilder {
            at: start,
            segments: Vec::new(),
        }
    }

    pub fn straight(mut self, length: f64) -> Self {
        let end = self.at.position + self.at.heading() * length;
        self.segments
            .push(PathSegment::Line(LineSeg::new(self.at.position, end)));
        self.at = Configuration::new(end, self.at.heading()).expect("unit heading");
        self
    }

    /// Arc of the given radius; positive sweep turns left.
    pub fn arc(mut self, radius: f64, sweep: f64) -> Self {
        let normal = if sweep >= 0.0 {
            self.at.left_normal()
        } else {
            self.at.right_normal()
        };
        let center = self.at.position + normal * radius;
        let start_angle = (self.at.position - center).angle();
        let seg = ArcSeg::new(center, radius, start_angle, sweep);
        let end = seg.end_point();
        let heading = seg.tangent_at(seg.length());
        self.segments.push(PathSegment::Arc(seg));
        self.at = Configuration::new(end, heading).expect("unit heading");
        self
    }

    pub fn turn_left(self, sweep: f64) -> Self {
        self.arc(1.0, sweep.abs())
    }

    pub fn turn_right(self, sweep: f64) -> Self {
        self.arc(1.0, -sweep.abs())
    }

    pub fn config(&self) -> &Configuration {
        &self.at
    }

    pub fn build(self) -> Result<CurvaturePath, PathError> {
        CurvaturePath::new(self.segments)
    }
}

// ---------------------------------------------------------------------------
// Validation and concatenation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Segment(PathError),
    Joint {
        index: usize,
        position_gap: f64,
        tangent_gap: f64,
    },
    StartPosition { gap: f64 },
    StartHeading { gap: f64 },
    EndPosition { gap: f64 },
    EndHeading { gap: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Segment(e) => write!(f, "{e}"),
            Violation::Joint {
                index,
                position_gap,
                tangent_gap,
            } => write!(
                f,
                "joint {index}: position gap {position_gap:.3e}, tangent gap {tangent_gap:.3e}"
            ),
            Violation::StartPosition { gap } => write!(f, "start position off by {gap:.3e}"),
            Violation::StartHeading { gap } => write!(f, "start heading off by {gap:.3e}"),
            Violation::EndPosition { gap } => write!(f, "end position off by {gap:.3e}"),
            Violation::EndHeading { gap } => write!(f, "end heading off by {gap:.3e}"),
        }
    }
}

/// Violations found by [`validate_path`]; an empty report means the path is a
/// valid element of the endpoint-condition space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks segment invariants, C1 joints, the curvature bound, and the
/// endpoint condition, all within 1e-9. Violations are data, not errors.
pub fn validate_path(path: &CurvaturePath, instance: &ProblemInstance) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, seg) in path.segments().iter().enumerate() {
        if let Some(e) = seg.invariant_error(i) {
            report.violations.push(Violation::Segment(e));
        }
    }
    for i in 0..path.segments().len().saturating_sub(1) {
        let position_gap = path.segments()[i]
            .end_point()
            .distance(path.segments()[i + 1].start_point());
        let tangent_gap =
            (path.segments()[i].end_tangent() - path.segments()[i + 1].start_tangent()).norm();
        if position_gap > PATH_EPS || tangent_gap > PATH_EPS {
            report.violations.push(Violation::Joint {
                index: i,
                position_gap,
                tangent_gap,
            });
        }
    }
    if path.segments().is_empty() {
        report.violations.push(Violation::Segment(PathError::Empty));
        return report;
    }
    let start = path.start_config();
    let end = path.end_config();
    let gap = start.position.distance(instance.x().position);
    if gap > PATH_EPS {
        report.violations.push(Violation::StartPosition { gap });
    }
    let gap = (start.heading() - instance.x().heading()).norm();
    if gap > PATH_EPS {
        report.violations.push(Violation::StartHeading { gap });
    }
    let gap = end.position.distance(instance.y().position);
    if gap > PATH_EPS {
        report.violations.push(Violation::EndPosition { gap });
    }
    let gap = (end.heading() - instance.y().heading()).norm();
    if gap > PATH_EPS {
        report.violations.push(Violation::EndHeading { gap });
    }
    report
}

/// Joins two paths end-to-start. Fails with `JointMismatch` when the shared
/// configuration differs by more than 1e-9.
pub fn concatenate(first: &CurvaturePath, second: &CurvaturePath) -> Result<CurvaturePath, PathError> {
    let a = first.end_config();
    let b = second.start_config();
    let position_gap = a.position.distance(b.position);
    let tangent_gap = (a.heading() - b.heading()).norm();
    if position_gap > PATH_EPS || tangent_gap > PATH_EPS {
        return Err(PathError::JointMismatch {
            index: first.segments().len() - 1,
            position_gap,
            tangent_gap,
        });
    }
    let mut segs = first.segments().to_vec();
    segs.extend_from_slice(second.segments());
    CurvaturePath::new(segs)
}

// ---------------------------------------------------------------------------
// Turning profile
// ---------------------------------------------------------------------------

/// Continuous lift of the tangent direction along the path. Piecewise linear
/// in arc length; the slope on each piece is the signed curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct TurningProfile {
    breaks: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TurningProfile {
    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.breaks.iter().copied().zip(self.values.iter().copied())
    }

    pub fn pieces(&self) -> usize {
        self.slopes.len()
    }

    pub fn piece_span(&self, i: usize) -> (f64, f64) {
        (self.breaks[i], self.breaks[i + 1])
    }

    pub fn slope(&self, i: usize) -> f64 {
        self.slopes[i]
    }

    pub fn value_at(&self, s: f64) -> f64 {
        let s = s.clamp(self.breaks[0], *self.breaks.last().unwrap());
        for i in 0..self.slopes.len() {
            if s <= self.breaks[i + 1] || i == self.slopes.len() - 1 {
                return self.values[i] + self.slopes[i] * (s - self.breaks[i]);
            }
        }
        unreachable!()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Arc-length intervals where the global minimum (the maximal
    /// inflection set) is attained. Point minima come back as degenerate
    /// intervals.
    pub fn global_minima(&self) -> Vec<(f64, f64)> {
        self.level_intervals(self.min())
    }

    pub fn global_maxima(&self) -> Vec<(f64, f64)> {
        self.level_intervals(self.max())
    }

    fn level_intervals(&self, level: f64) -> Vec<(f64, f64)> {
        let tol = 1e-12;
        let mut out: Vec<(f64, f64)> = Vec::new();
        for i in 0..self.slopes.len() {
            let (v0, v1) = (self.values[i], self.values[i + 1]);
            let (s0, s1) = (self.breaks[i], self.breaks[i + 1]);
            let hit: Option<(f64, f64)> = if (v0 - level).abs() <= tol && (v1 - level).abs() <= tol
            {
                Some((s0, s1))
            } else if (v0 - level).abs() <= tol {
                Some((s0, s0))
            } else if (v1 - level).abs() <= tol {
                Some((s1, s1))
            } else {
                None
            };
            if let Some((a, b)) = hit {
                match out.last_mut() {
                    Some(last) if a <= last.1 + tol => last.1 = last.1.max(b),
                    _ => out.push((a, b)),
                }
            }
        }
        out
    }
}

/// Builds the turning profile: tau(0) is the start heading angle and each
/// arc contributes its signed sweep (lines contribute zero), so breakpoint
/// values are exact sums.
pub fn turning_profile(path: &CurvaturePath) -> TurningProfile {
    let mut breaks = Vec::with_capacity(path.segments().len() + 1);
    let mut values = Vec::with_capacity(path.segments().len() + 1);
    let mut slopes = Vec::with_capacity(path.segments().len());
    let mut s = 0.0;
    let mut tau = path.start_config().heading_angle();
    breaks.push(s);
    values.push(tau);
    for seg in path.segments() {
        let len = seg.length();
        let delta = match seg {
            PathSegment::Arc(a) => a.sweep,
            PathSegment::Line(_) => 0.0,
        };
        s += len;
        tau += delta;
        breaks.push(s);
        values.push(tau);
        slopes.push(if len > 0.0 { delta / len } else { 0.0 });
    }
    TurningProfile {
        breaks,
        values,
        slopes,
    }
}

// ---------------------------------------------------------------------------
// Parallel tangents
// ---------------------------------------------------------------------------

/// First pair of parameters s1 < s2 whose tangents point in opposite
/// directions, i.e. tau(s2) = tau(s1) + (odd multiple of pi). Resolution is
/// exact on the piecewise-linear profile; ties go to the smallest s1 then
/// the smallest s2.
pub fn find_parallel_tangents(path: &CurvaturePath) -> Option<(f64, f64)> {
    let profile = turning_profile(path);
    find_parallel_in_profile(&profile)
}

pub(crate) fn find_parallel_in_profile(profile: &TurningProfile) -> Option<(f64, f64)> {
    let tol = 1e-12;
    let mut best: Option<(f64, f64)> = None;
    let n = profile.pieces();
    for i in 0..n {
        let (a_i, b_i) = profile.piece_span(i);
        let ci = profile.slope(i);
        let vi = profile.value_at(a_i);
        let (lo_i, hi_i) = piece_range(vi, ci, b_i - a_i);
        for j in i..n {
            let (a_j, b_j) = profile.piece_span(j);
            let cj = profile.slope(j);
            let vj = profile.value_at(a_j);
            let (lo_j, hi_j) = piece_range(vj, cj, b_j - a_j);

            // Odd multiples of pi inside the difference range.
            let d_lo = lo_j - hi_i;
            let d_hi = hi_j - lo_i;
            let mut m = odd_at_or_above((d_lo - tol) / PI);
            while (m as f64) * PI <= d_hi + tol {
                let target_offset = (m as f64) * PI;
                if let Some(pair) = solve_pair(
                    (a_i, b_i, vi, ci),
                    (a_j, b_j, vj, cj),
                    target_offset,
                    i == j,
                    tol,
                ) {
                    best = match best {
                        None => Some(pair),
                        Some(cur) => {
                            if (pair.0, pair.1) < (cur.0, cur.1) {
                                Some(pair)
                            } else {
                                Some(cur)
                            }
                        }
                    };
                }
                m += 2;
            }
        }
    }
    best
}

fn piece_range(v: f64, slope: f64, len: f64) -> (f64, f64) {
    let end = v + slope * len;
    (v.min(end), v.max(end))
}

fn odd_at_or_above(x: f64) -> i64 {
    let mut m = x.ceil() as i64;
    if m % 2 == 0 {
        m += 1;
    }
    m
}

/// Smallest (s1, s2) with tau(s2) - tau(s1) = offset, s1 in piece one and s2
/// in piece two; requires s1 < s2 when the pieces coincide.
fn solve_pair(
    p1: (f64, f64, f64, f64),
    p2: (f64, f64, f64, f64),
    offset: f64,
    same_piece: bool,
    tol: f64,
) -> Option<(f64, f64)> {
    let (a1, b1, v1, c1) = p1;
    let (a2, b2, v2, c2) = p2;
    if same_piece {
        if c1.abs() <= tol {
            return None; // constant piece cannot span an odd multiple of pi
        }
        let gap = offset / c1;
        if gap <= tol {
            return None;
        }
        let s1 = a1;
        let s2 = s1 + gap;
        if s2 <= b1 + tol {
            return Some((s1, s2.min(b1)));
        }
        return None;
    }
    let (lo2, hi2) = piece_range(v2, c2, b2 - a2);
    // Feasible tau(s1) values: [lo2, hi2] - offset, pulled back through the
    // linear map on piece one.
    let (t_lo, t_hi) = (lo2 - offset, hi2 - offset);
    let (s_min, s_max) = if c1.abs() <= tol {
        if v1 >= t_lo - tol && v1 <= t_hi + tol {
            (a1, b1)
        } else {
            return None;
        }
    } else {
        let x1 = a1 + (t_lo - v1) / c1;
        let x2 = a1 + (t_hi - v1) / c1;
        (x1.min(x2).max(a1), x1.max(x2).min(b1))
    };
    if s_min > s_max + tol {
        return None;
    }
    let s1 = s_min;
    let target = v1 + c1 * (s1 - a1) + offset;
    let s2 = if c2.abs() <= tol {
        if (v2 - target).abs() <= 1e-9 {
            a2
        } else {
            return None;
        }
    } else {
        (a2 + (target - v2) / c2).clamp(a2, b2)
    };
    Some((s1, s2))
}

// ---------------------------------------------------------------------------
// Self-intersections
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfIntersection {
    pub s1: f64,
    pub s2: f64,
    pub point: Point,
}

/// All pairwise segment intersections excluding the joints shared by
/// consecutive segments. An empty list means the path is embedded.
pub fn self_intersections(path: &CurvaturePath) -> Vec<SelfIntersection> {
    use crate::intersect::{segment_hits, SegOverlap};
    let mut events: Vec<SelfIntersection> = Vec::new();
    let segs = path.segments();
    let n = segs.len();
    for i in 0..n {
        // A single arc touches itself only when it is a full circle.
        if let PathSegment::Arc(a) = &segs[i] {
            if a.sweep.abs() >= TAU - 1e-9 {
                events.push(SelfIntersection {
                    s1: path.cum[i],
                    s2: path.cum[i] + a.length(),
                    point: a.start_point(),
                });
            }
        }
        for j in i + 1..n {
            let hits = match segment_hits(&segs[i], &segs[j]) {
                SegOverlap::None => continue,
                SegOverlap::Hits(h) => h,
                SegOverlap::Coincident { .. } => continue, // overlap runs are not transversal
            };
            let joint = if j == i + 1 {
                Some(segs[i].end_point())
            } else {
                None
            };
            for h in hits {
                if let Some(jp) = joint {
                    if h.point.distance(jp) <= 1e-7 {
                        continue;
                    }
                }
                events.push(SelfIntersection {
                    s1: path.cum[i] + h.s1,
                    s2: path.cum[j] + h.s2,
                    point: h.point,
                });
            }
        }
    }
    events.sort_by(|a, b| (a.s1, a.s2).partial_cmp(&(b.s1, b.s2)).expect("finite"));
    events.dedup_by(|a, b| (a.s1 - b.s1).abs() <= 1e-7 && (a.s2 - b.s2).abs() <= 1e-7);
    events
}

// ---------------------------------------------------------------------------
// Diameter and long arcs
// ---------------------------------------------------------------------------

/// Maximum pairwise distance over the path, from per-segment extremal
/// analysis (endpoint pairs, far points of arcs, aligned arc-arc pairs).
pub fn path_diameter(path: &CurvaturePath) -> f64 {
    let segs = path.segments();
    let mut best = 0.0f64;
    for i in 0..segs.len() {
        best = best.max(single_segment_spread(&segs[i]));
        for j in i..segs.len() {
            best = best.max(segment_pair_max(&segs[i], &segs[j]));
        }
    }
    best
}

fn single_segment_spread(seg: &PathSegment) -> f64 {
    match seg {
        PathSegment::Line(l) => l.length(),
        PathSegment::Arc(a) => {
            if a.sweep.abs() >= PI {
                2.0 * a.radius
            } else {
                2.0 * a.radius * (a.sweep.abs() / 2.0).sin()
            }
        }
    }
}

fn segment_pair_max(a: &PathSegment, b: &PathSegment) -> f64 {
    let pts_a = [a.start_point(), a.end_point()];
    let pts_b = [b.start_point(), b.end_point()];
    let mut best = 0.0f64;
    for p in pts_a {
        for q in pts_b {
            best = best.max(p.distance(q));
        }
        best = best.max(max_distance_to(seg_as_arc(b), p));
    }
    for q in pts_b {
        best = best.max(max_distance_to(seg_as_arc(a), q));
    }
    if let (Some(aa), Some(bb)) = (seg_as_arc(a), seg_as_arc(b)) {
        let d = aa.center.distance(bb.center);
        if d > 1e-12 {
            let away_a = (aa.center - bb.center) * (1.0 / d);
            let away_b = (bb.center - aa.center) * (1.0 / d);
            if arc_contains_angle(aa, away_a.angle()) && arc_contains_angle(bb, away_b.angle()) {
                best = best.max(d + aa.radius + bb.radius);
            }
        }
    }
    best
}

fn seg_as_arc(seg: &PathSegment) -> Option<&ArcSeg> {
    match seg {
        PathSegment::Arc(a) => Some(a),
        PathSegment::Line(_) => None,
    }
}

/// Farthest distance from `p` to the (optional) arc, 0 when absent.
fn max_distance_to(arc: Option<&ArcSeg>, p: Point) -> f64 {
    let Some(a) = arc else { return 0.0 };
    let v = a.center - p;
    let d = v.norm();
    if d <= 1e-12 {
        return a.radius;
    }
    if arc_contains_angle(a, v.angle()) {
        d + a.radius
    } else {
        p.distance(a.start_point()).max(p.distance(a.end_point()))
    }
}

pub(crate) fn arc_contains_angle(a: &ArcSeg, angle: f64) -> bool {
    a.contains_angle(angle, 1e-9)
}

/// First run of consecutive co-circular arcs whose merged length reaches at
/// least pi times the radius; returns the index of the run's first segment.
pub fn contains_long_arc(path: &CurvaturePath) -> Option<usize> {
    let segs = path.segments();
    let mut i = 0;
    while i < segs.len() {
        let PathSegment::Arc(first) = &segs[i] else {
            i += 1;
            continue;
        };
        let mut total = first.sweep.abs();
        let mut j = i + 1;
        while j < segs.len() {
            let PathSegment::Arc(next) = &segs[j] else { break };
            let cocircular = next.center.distance(first.center) <= 1e-9
                && (next.radius - first.radius).abs() <= 1e-9
                && next.sweep.signum() == first.sweep.signum();
            if !cocircular {
                break;
            }
            total += next.sweep.abs();
            j += 1;
        }
        if total >= PI - 1e-12 {
            return Some(i);
        }
        i = j.max(i + 1);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::normalize_problem;
    use std::f64::consts::FRAC_PI_2;

    fn cfg(x: f64, y: f64, deg: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), deg.to_radians())
    }

    fn instance(x: Configuration, y: Configuration) -> ProblemInstance {
        normalize_problem(&x, &y, 1.0).unwrap()
    }

    fn straight(from: Point, to: Point) -> CurvaturePath {
        CurvaturePath::new(vec![PathSegment::Line(LineSeg::new(from, to))]).unwrap()
    }

    #[test]
    fn validate_straight_segment() {
        let inst = instance(cfg(0.0, 0.0, 0.0), cfg(2.0, 0.0, 0.0));
        let path = straight(Point::ORIGIN, Point::new(2.0, 0.0));
        assert!(validate_path(&path, &inst).is_valid());

        let bad = instance(cfg(0.0, 0.0, 0.0), cfg(2.0, 0.0, 90.0));
        let report = validate_path(&path, &bad);
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::EndHeading { .. }]
        ));
    }

    #[test]
    fn validate_flags_small_radius() {
        let arc = ArcSeg::new(Point::new(0.0, 0.5), 0.5, -FRAC_PI_2, FRAC_PI_2);
        let path = CurvaturePath::from_segments_unchecked(vec![PathSegment::Arc(arc)]);
        let inst = instance(cfg(0.0, 0.0, 0.0), cfg(0.5, 0.5, 90.0));
        let report = validate_path(&path, &inst);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Segment(PathError::RadiusBelowBound { .. }))));
    }

    #[test]
    fn concatenate_adds_lengths() {
        let quarter = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .build()
            .unwrap();
        let line = straight(Point::new(1.0, 1.0), Point::new(1.0, 2.0));
        let joined = concatenate(&quarter, &line).unwrap();
        assert!((joined.total_length() - (FRAC_PI_2 + 1.0)).abs() <= 1e-12);

        let mismatched = straight(Point::new(5.0, 5.0), Point::new(6.0, 5.0));
        assert!(matches!(
            concatenate(&quarter, &mismatched),
            Err(PathError::JointMismatch { .. })
        ));
    }

    #[test]
    fn concatenate_allows_inflection_joint() {
        let s_curve = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .turn_right(FRAC_PI_2)
            .build()
            .unwrap();
        let inst = instance(cfg(0.0, 0.0, 0.0), s_curve.end_config());
        assert!(validate_path(&s_curve, &inst).is_valid());
    }

    #[test]
    fn turning_profile_shapes() {
        let line = straight(Point::ORIGIN, Point::new(3.0, 0.0));
        let p = turning_profile(&line);
        assert_eq!(p.min(), p.max());

        let arc = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(1.3)
            .build()
            .unwrap();
        let p = turning_profile(&arc);
        assert!((p.value_at(1.3) - 1.3).abs() <= 1e-12);

        let rl = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_right(PI / 3.0)
            .turn_left(PI / 3.0)
            .build()
            .unwrap();
        let p = turning_profile(&rl);
        assert!((p.min() + PI / 3.0).abs() <= 1e-12);
        let minima = p.global_minima();
        assert_eq!(minima.len(), 1);
        assert!((minima[0].0 - PI / 3.0).abs() <= 1e-12);
    }

    #[test]
    fn parallel_tangents_cases() {
        let line = straight(Point::ORIGIN, Point::new(2.0, 0.0));
        assert_eq!(find_parallel_tangents(&line), None);

        let half = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .build()
            .unwrap();
        let (s1, s2) = find_parallel_tangents(&half).unwrap();
        assert!(s1.abs() <= 1e-12 && (s2 - PI).abs() <= 1e-12);

        // LSL with two pi/4 arcs: turning range is pi/2 < pi.
        let lsl = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI / 4.0)
            .straight(2.0)
            .turn_left(PI / 4.0)
            .build()
            .unwrap();
        assert_eq!(find_parallel_tangents(&lsl), None);
    }

    #[test]
    fn self_intersection_cases() {
        let line = straight(Point::ORIGIN, Point::new(2.0, 0.0));
        assert!(self_intersections(&line).is_empty());

        let full_circle = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .turn_left(PI)
            .build()
            .unwrap();
        let hits = self_intersections(&full_circle);
        assert_eq!(hits.len(), 1);
        assert!(hits[0].s1.abs() <= 1e-9);
        assert!((hits[0].s2 - TAU).abs() <= 1e-7);

        // Straight, 5/4-turn, straight: the closing leg crosses the first.
        let hook = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .straight(4.0)
            .turn_left(1.25 * PI)
            .straight(4.0)
            .build()
            .unwrap();
        let hits = self_intersections(&hook);
        assert_eq!(hits.len(), 1, "hits: {hits:?}");
        let (s1, s2) = (hits[0].s1, hits[0].s2);
        let p1 = hook.point_at(s1);
        let p2 = hook.point_at(s2);
        assert!(p1.distance(p2) <= 1e-7);
        assert!(hits[0].point.distance(Point::new(4.0 - 2.0f64.sqrt() - 1.0, 0.0)) <= 1e-7);
        assert!(s2 - s1 > 0.5);
    }

    #[test]
    fn diameter_against_sampling_oracle() {
        let line = straight(Point::ORIGIN, Point::new(2.0, 0.0));
        assert!((path_diameter(&line) - 2.0).abs() <= 1e-12);

        let half = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .build()
            .unwrap();
        assert!((path_diameter(&half) - 2.0).abs() <= 1e-12);

        let bent = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .straight(2.0)
            .build()
            .unwrap();
        let analytic = path_diameter(&bent);
        let oracle = sampling_diameter(&bent, 1e-3);
        assert!((analytic - oracle).abs() <= 1e-5, "{analytic} vs {oracle}");
        assert!(analytic + 1e-12 >= oracle);
    }

    fn sampling_diameter(path: &CurvaturePath, step: f64) -> f64 {
        let n = (path.total_length() / step).ceil() as usize;
        let pts: Vec<Point> = (0..=n)
            .map(|k| path.point_at(k as f64 * path.total_length() / n as f64))
            .collect();
        let mut best = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max(pts[i].distance(pts[j]));
            }
        }
        best
    }

    #[test]
    fn long_arc_detection() {
        let exact_pi = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .build()
            .unwrap();
        assert_eq!(contains_long_arc(&exact_pi), Some(0));

        let quarter = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .build()
            .unwrap();
        assert_eq!(contains_long_arc(&quarter), None);

        let merged = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .turn_left(0.6 * PI)
            .build()
            .unwrap();
        assert_eq!(contains_long_arc(&merged), Some(0));
    }

    #[test]
    fn subpath_splitting_preserves_geometry() {
        let path = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(FRAC_PI_2)
            .straight(2.0)
            .turn_right(FRAC_PI_2)
            .build()
            .unwrap();
        let mid = path.total_length() / 3.0;
        let segs = path.subpath_segments(mid, path.total_length());
        let sub = CurvaturePath::new(segs).unwrap();
        assert!((sub.total_length() - (path.total_length() - mid)).abs() <= 1e-9);
        assert!(sub.point_at(0.0).distance(path.point_at(mid)) <= 1e-9);
    }
}
