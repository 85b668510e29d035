//! The trapping region bounded by six unit-circle arcs.
//!
//! When both adjacent-center distances fall below 4, the four adjacent
//! circles together with two mutually tangent middle circles can enclose a
//! compact region. Its boundary is a simple closed chain of six arcs with
//! smooth inflections at the four adjacent/middle tangency points and
//! tangential cusps at the two endpoints. This module constructs the
//! region, splits it into the three subregions cut off by the inflection
//! lines, and answers point-location, path-contact, and diameter queries.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::geom::{
    adjacent_circles, cw_delta, ccw_delta, mutual_tangent_circle, tangent_points_from, Circle,
    Configuration, Point, ProblemInstance, Side, Vec2,
};
use crate::hull::{convex_hull, golden_max, hull_diameter, Sample};
use crate::intersect::{ray_arc_hits, segment_hits, SegOverlap};
use crate::path::{arc_contains_angle, ArcSeg, CurvaturePath, LineSeg, PathSegment};

const BOUNDARY_EPS: f64 = 1e-9;
const DIAM_STEP: f64 = 1e-3;

/// Which of the six boundary circles an arc belongs to, in chain order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryArcId {
    StartRight,
    LowerMiddle,
    GoalRight,
    GoalLeft,
    UpperMiddle,
    StartLeft,
}

impl fmt::Display for BoundaryArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundaryArcId::StartRight => "start_right",
            BoundaryArcId::LowerMiddle => "lower_middle",
            BoundaryArcId::GoalRight => "goal_right",
            BoundaryArcId::GoalLeft => "goal_left",
            BoundaryArcId::UpperMiddle => "upper_middle",
            BoundaryArcId::StartLeft => "start_left",
        };
        f.write_str(s)
    }
}

const CHAIN_IDS: [BoundaryArcId; 6] = [
    BoundaryArcId::StartRight,
    BoundaryArcId::LowerMiddle,
    BoundaryArcId::GoalRight,
    BoundaryArcId::GoalLeft,
    BoundaryArcId::UpperMiddle,
    BoundaryArcId::StartLeft,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryArc {
    pub id: BoundaryArcId,
    pub arc: ArcSeg,
}

/// Inflection point: a tangency between an adjacent circle and a middle
/// circle, plus the length of the smallest boundary arc joining it to the
/// nearest endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inflection {
    pub point: Point,
    /// Length of the adjacent arc ending here.
    pub theta: f64,
    /// Chain index of that adjacent arc.
    pub chain_index: usize,
}

/// Dividing chord (or tangent replacement line) with a stored reference
/// side so subregion membership is a sign test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divider {
    pub a: Point,
    pub b: Point,
    ref_sign: f64,
}

impl Divider {
    fn new(a: Point, b: Point, reference: Point) -> Option<Divider> {
        let side = (b - a).cross(reference - a);
        let len = a.distance(b);
        if len <= 1e-12 || side.abs() / len <= 1e-12 {
            return None;
        }
        Some(Divider {
            a,
            b,
            ref_sign: side.signum(),
        })
    }

    /// Signed distance-like side value, positive toward the reference point.
    pub fn side(&self, p: Point) -> f64 {
        self.ref_sign * (self.b - self.a).cross(p - self.a) / self.a.distance(self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subregion {
    R1,
    R2,
    R3,
}

impl fmt::Display for Subregion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subregion::R1 => "R1",
            Subregion::R2 => "R2",
            Subregion::R3 => "R3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionLocation {
    Inside,
    Outside,
    OnBoundary {
        part: Subregion,
        arc: BoundaryArcId,
    },
}

/// One closed-face edge, used for subregion rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FacePiece {
    Arc(ArcSeg),
    Chord(LineSeg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactKind {
    /// Touch without a side change.
    Tangent,
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEvent {
    /// Arc length along the queried path.
    pub s: f64,
    pub point: Point,
    pub arc: BoundaryArcId,
    pub part: Subregion,
    pub kind: ContactKind,
    /// Contact at the path's own endpoints (which always lie on the
    /// boundary for paths realizing the endpoint condition).
    pub at_path_endpoint: bool,
}

/// Interval where the path lies in the boundary itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceRun {
    pub s_start: f64,
    pub s_end: f64,
    pub arc: BoundaryArcId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub in_omega: bool,
    pub contacts: Vec<ContactEvent>,
    pub coincidences: Vec<CoincidenceRun>,
    /// Tangent contacts on R1 after visiting R2, or on R3 before a later
    /// R2 visit.
    pub returning_points: Vec<ContactEvent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    /// Authoritative value: dense boundary sampling, locally refined.
    pub value: f64,
    pub witness: (Point, Point),
    /// Endpoint-pair candidate d(x, y).
    pub candidate_endpoints: f64,
    /// Far pair of the two middle circles, when both far points lie on the
    /// middle arcs.
    pub candidate_middle: Option<f64>,
    pub sampled: f64,
    /// True when the analytic candidates and the sampled maximum differ by
    /// more than 1e-6.
    pub disagreement: bool,
}

impl DiameterReport {
    pub fn candidate_max(&self) -> f64 {
        self.candidate_middle
            .unwrap_or(f64::NEG_INFINITY)
            .max(self.candidate_endpoints)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaRegion {
    x: Configuration,
    y: Configuration,
    chain: [BoundaryArc; 6],
    cum: [f64; 7],
    inflections: [Inflection; 4],
    upper_middle: Circle,
    lower_middle: Circle,
    l1: Divider,
    l2: Divider,
    faces: [Vec<FacePiece>; 3],
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Builds the region for a normalized instance, or `None` when the six-arc
/// boundary does not close into a simple chain satisfying the arc
/// condition (no region exists). Requires both adjacent-center distances
/// below 4.
pub fn construct_region(instance: &ProblemInstance) -> Option<OmegaRegion> {
    let x = *instance.x();
    let y = *instance.y();
    let (xl, xr) = adjacent_circles(&x);
    let (yl, yr) = adjacent_circles(&y);
    let d_ll = xl.center.distance(yl.center);
    let d_rr = xr.center.distance(yr.center);
    if !(d_ll < 4.0 && d_rr < 4.0) {
        return None;
    }
    if d_ll <= 1e-9 || d_rr <= 1e-9 {
        return None; // shared adjacent circle: single/double-arc territory
    }

    // Arc condition: the upper middle center sits below the left-left
    // center segment, the lower middle center above the right-right one.
    let upper_middle = mutual_tangent_circle(&xl, &yl, Side::Below).ok()?;
    let lower_middle = mutual_tangent_circle(&xr, &yr, Side::Above).ok()?;

    let i_lx = xl.center.midpoint(upper_middle.center);
    let i_ly = yl.center.midpoint(upper_middle.center);
    let i_rx = xr.center.midpoint(lower_middle.center);
    let i_ry = yr.center.midpoint(lower_middle.center);

    // Chain: start -> i_rx -> i_ry -> goal -> i_ly -> i_lx -> start.
    // Adjacent arcs run clockwise, middle arcs counterclockwise; the two
    // traversal reversals at the endpoints are the cusps of the lens.
    let arcs = [
        cw_arc(&xr, x.position, i_rx),
        ccw_arc(&lower_middle, i_rx, i_ry),
        cw_arc(&yr, i_ry, y.position),
        cw_arc(&yl, y.position, i_ly),
        ccw_arc(&upper_middle, i_ly, i_lx),
        cw_arc(&xl, i_lx, x.position),
    ];

    // Smallest-arc property for the four adjacent arcs; strict arc
    // condition for the middle arcs.
    for (k, arc) in arcs.iter().enumerate() {
        let limit_ok = if k == 1 || k == 4 {
            arc.sweep.abs() < PI
        } else {
            arc.sweep.abs() <= PI + 1e-9
        };
        if !limit_ok {
            return None;
        }
    }
    debug_assert!(chain_is_continuous(&arcs, x.position));

    let chain: [BoundaryArc; 6] = std::array::from_fn(|k| BoundaryArc {
        id: CHAIN_IDS[k],
        arc: arcs[k],
    });
    if !chain_is_simple(&chain) {
        return None;
    }

    // Norm ordering of the inflection points, ties by polar angle.
    let mut tagged = [
        (i_rx, arcs[0].length(), 0usize),
        (i_ry, arcs[2].length(), 2usize),
        (i_ly, arcs[3].length(), 3usize),
        (i_lx, arcs[5].length(), 5usize),
    ];
    tagged.sort_by(|a, b| {
        (a.0.norm(), a.0.polar_angle())
            .partial_cmp(&(b.0.norm(), b.0.polar_angle()))
            .expect("finite")
    });
    let inflections: [Inflection; 4] = std::array::from_fn(|k| Inflection {
        point: tagged[k].0,
        theta: tagged[k].1,
        chain_index: tagged[k].2,
    });
    // The two nearest must be the start-end tangencies, matching the
    // dividing-line construction.
    let start_end = [0usize, 5usize];
    if !(start_end.contains(&inflections[0].chain_index)
        && start_end.contains(&inflections[1].chain_index))
    {
        return None;
    }

    let mut splits: Vec<(usize, f64)> = Vec::new();
    let l1 = divider(&chain, &inflections[0], &inflections[1], x.position, &mut splits)?;
    let l2 = divider(&chain, &inflections[2], &inflections[3], y.position, &mut splits)?;

    let faces = build_faces(&chain, &l1, &l2, &splits);

    let mut cum = [0.0; 7];
    for k in 0..6 {
        cum[k + 1] = cum[k] + chain[k].arc.length();
    }

    Some(OmegaRegion {
        x,
        y,
        chain,
        cum,
        inflections,
        upper_middle,
        lower_middle,
        l1,
        l2,
        faces,
    })
}

fn cw_arc(circle: &Circle, from: Point, to: Point) -> ArcSeg {
    let a = (from - circle.center).angle();
    let b = (to - circle.center).angle();
    ArcSeg::new(circle.center, circle.radius, a, -cw_delta(a, b))
}

fn ccw_arc(circle: &Circle, from: Point, to: Point) -> ArcSeg {
    let a = (from - circle.center).angle();
    let b = (to - circle.center).angle();
    ArcSeg::new(circle.center, circle.radius, a, ccw_delta(a, b))
}

fn chain_is_continuous(arcs: &[ArcSeg; 6], start: Point) -> bool {
    let mut ok = arcs[0].start_point().distance(start) <= BOUNDARY_EPS;
    for k in 0..6 {
        let next = &arcs[(k + 1) % 6];
        ok &= arcs[k].end_point().distance(next.start_point()) <= BOUNDARY_EPS;
        // Tangent lines agree at every node; the direction flips exactly at
        // the two cusps (chain indices 2->3 and 5->0).
        let t_out = arcs[k].tangent_at(arcs[k].length());
        let t_in = next.tangent_at(0.0);
        let gap = if k == 2 || k == 5 {
            (t_out + t_in).norm()
        } else {
            (t_out - t_in).norm()
        };
        ok &= gap <= 1e-6;
    }
    ok
}

/// No two arcs meet except at shared chain endpoints.
fn chain_is_simple(chain: &[BoundaryArc; 6]) -> bool {
    for i in 0..6 {
        if chain[i].arc.length() <= 1e-9 {
            continue;
        }
        for j in i + 1..6 {
            if chain[j].arc.length() <= 1e-9 {
                continue;
            }
            let a = PathSegment::Arc(chain[i].arc);
            let b = PathSegment::Arc(chain[j].arc);
            match segment_hits(&a, &b) {
                SegOverlap::None => {}
                SegOverlap::Coincident { .. } => return false,
                SegOverlap::Hits(hits) => {
                    for h in hits {
                        let on_i = h.point.distance(chain[i].arc.start_point()) <= 1e-7
                            || h.point.distance(chain[i].arc.end_point()) <= 1e-7;
                        let on_j = h.point.distance(chain[j].arc.start_point()) <= 1e-7
                            || h.point.distance(chain[j].arc.end_point()) <= 1e-7;
                        if !(on_i && on_j) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Dividing line for one end: the chord between the end's two inflection
/// points, or, when the longer adjacent arc exceeds a quarter turn, the
/// tangent from the other inflection point touching that arc.
fn divider(
    chain: &[BoundaryArc; 6],
    first: &Inflection,
    second: &Inflection,
    reference: Point,
    splits: &mut Vec<(usize, f64)>,
) -> Option<Divider> {
    let replace = |from: &Inflection, onto: &Inflection, splits: &mut Vec<(usize, f64)>| {
        let arc = &chain[onto.chain_index].arc;
        let (t1, t2) = tangent_points_from(from.point, arc.center)?;
        let mut cands: Vec<Point> = [t1, t2]
            .into_iter()
            .filter(|z| arc_contains_angle(arc, (*z - arc.center).angle()))
            .collect();
        if cands.is_empty() {
            return None;
        }
        cands.sort_by(|a, b| {
            a.distance(onto.point)
                .partial_cmp(&b.distance(onto.point))
                .expect("finite")
        });
        let z = cands[0];
        splits.push((onto.chain_index, (z - arc.center).angle()));
        Some(z)
    };

    if first.theta > FRAC_PI_2 && second.theta > FRAC_PI_2 {
        return None;
    }
    let (a, b) = if second.theta > FRAC_PI_2 {
        (first.point, replace(first, second, splits)?)
    } else if first.theta > FRAC_PI_2 {
        (second.point, replace(second, first, splits)?)
    } else {
        (first.point, second.point)
    };
    Divider::new(a, b, reference)
}

/// Splits the chain at replacement tangency points and groups the pieces
/// into the three closed faces, inserting chords across the gaps.
fn build_faces(
    chain: &[BoundaryArc; 6],
    l1: &Divider,
    l2: &Divider,
    splits: &[(usize, f64)],
) -> [Vec<FacePiece>; 3] {
    let mut arcs: Vec<ArcSeg> = Vec::with_capacity(8);
    for (k, b) in chain.iter().enumerate() {
        if b.arc.length() <= 1e-9 {
            continue;
        }
        let mut cuts: Vec<f64> = splits
            .iter()
            .filter(|(idx, _)| *idx == k)
            .filter_map(|(_, angle)| crate::intersect::arc_param(&b.arc, *angle))
            .filter(|s| *s > 1e-9 && *s < b.arc.length() - 1e-9)
            .collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let mut rest = b.arc;
        let mut consumed = 0.0;
        for c in cuts {
            let (head, tail) = split_arc(&rest, c - consumed);
            arcs.push(head);
            rest = tail;
            consumed = c;
        }
        arcs.push(rest);
    }

    let part_of = |p: Point| -> Subregion {
        if l1.side(p) > 1e-9 {
            Subregion::R1
        } else if l2.side(p) > 1e-9 {
            Subregion::R3
        } else {
            Subregion::R2
        }
    };

    let mut faces: [Vec<FacePiece>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for arc in &arcs {
        let mid = arc.point_at(0.5 * arc.length());
        let face = match part_of(mid) {
            Subregion::R1 => 0,
            Subregion::R2 => 1,
            Subregion::R3 => 2,
        };
        faces[face].push(FacePiece::Arc(*arc));
    }
    for face in &mut faces {
        close_face(face);
    }
    faces
}

fn split_arc(arc: &ArcSeg, s: f64) -> (ArcSeg, ArcSeg) {
    let a = arc.angle_at(s);
    (
        ArcSeg::new(arc.center, arc.radius, arc.start_angle, a - arc.start_angle),
        ArcSeg::new(arc.center, arc.radius, a, arc.end_angle() - a),
    )
}

fn close_face(pieces: &mut Vec<FacePiece>) {
    if pieces.is_empty() {
        return;
    }
    let endpoints = |p: &FacePiece| match p {
        FacePiece::Arc(a) => (a.start_point(), a.end_point()),
        FacePiece::Chord(l) => (l.start, l.end),
    };
    let mut out: Vec<FacePiece> = Vec::with_capacity(pieces.len() + 2);
    for piece in pieces.iter() {
        if let Some(last) = out.last() {
            let cur_end = endpoints(last).1;
            let next_start = endpoints(piece).0;
            if cur_end.distance(next_start) > 1e-9 {
                out.push(FacePiece::Chord(LineSeg::new(cur_end, next_start)));
            }
        }
        out.push(*piece);
    }
    let first = endpoints(&out[0]).0;
    let last = endpoints(out.last().expect("non-empty")).1;
    if last.distance(first) > 1e-9 {
        out.push(FacePiece::Chord(LineSeg::new(last, first)));
    }
    *pieces = out;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

impl OmegaRegion {
    pub fn x(&self) -> &Configuration {
        &self.x
    }

    pub fn y(&self) -> &Configuration {
        &self.y
    }

    pub fn boundary(&self) -> &[BoundaryArc; 6] {
        &self.chain
    }

    pub fn boundary_length(&self) -> f64 {
        self.cum[6]
    }

    /// Inflection points ordered by distance from the origin (ties by
    /// polar angle).
    pub fn inflections(&self) -> &[Inflection; 4] {
        &self.inflections
    }

    pub fn thetas(&self) -> [f64; 4] {
        std::array::from_fn(|k| self.inflections[k].theta)
    }

    pub fn middle_circles(&self) -> (&Circle, &Circle) {
        (&self.upper_middle, &self.lower_middle)
    }

    pub fn middle_arcs(&self) -> (&ArcSeg, &ArcSeg) {
        (&self.chain[4].arc, &self.chain[1].arc)
    }

    pub fn dividers(&self) -> (&Divider, &Divider) {
        (&self.l1, &self.l2)
    }

    pub fn faces(&self) -> &[Vec<FacePiece>; 3] {
        &self.faces
    }

    /// Subregion attribution by the dividing-line side tests.
    pub fn part_of(&self, p: Point) -> Subregion {
        if self.l1.side(p) > 1e-9 {
            Subregion::R1
        } else if self.l2.side(p) > 1e-9 {
            Subregion::R3
        } else {
            Subregion::R2
        }
    }

    fn distance_to_arc(arc: &ArcSeg, p: Point) -> f64 {
        let v = p - arc.center;
        let d = v.norm();
        if d > 1e-12 && arc_contains_angle(arc, v.angle()) {
            (d - arc.radius).abs()
        } else {
            p.distance(arc.start_point()).min(p.distance(arc.end_point()))
        }
    }

    /// Inside/outside by crossing parity against the arc chain; points
    /// within 1e-9 of the chain report the boundary arc and subregion.
    pub fn locate_point(&self, p: Point) -> RegionLocation {
        let mut best: Option<(f64, BoundaryArcId)> = None;
        for b in &self.chain {
            if b.arc.length() <= 1e-12 {
                continue;
            }
            let d = Self::distance_to_arc(&b.arc, p);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, b.id));
            }
        }
        if let Some((d, id)) = best {
            if d <= BOUNDARY_EPS {
                return RegionLocation::OnBoundary {
                    part: self.part_of(p),
                    arc: id,
                };
            }
        }
        if self.point_inside(p) {
            RegionLocation::Inside
        } else {
            RegionLocation::Outside
        }
    }

    fn point_inside(&self, p: Point) -> bool {
        // Ray parity with deterministic retry on tangential or node-grazing
        // rays.
        const GOLDEN_STEP: f64 = 2.399_963_229_728_653;
        let mut angle = 0.734_652_1;
        for _ in 0..64 {
            let dir = Vec2::from_angle(angle);
            angle += GOLDEN_STEP;
            let mut count = 0usize;
            let mut clean = true;
            for b in &self.chain {
                if b.arc.length() <= 1e-9 {
                    continue;
                }
                for (_, tangential, near_end) in ray_arc_hits(p, dir, &b.arc) {
                    if tangential || near_end {
                        clean = false;
                        break;
                    }
                    count += 1;
                }
                if !clean {
                    break;
                }
            }
            if clean {
                return count % 2 == 1;
            }
        }
        self.winding_inside(p)
    }

    fn winding_inside(&self, p: Point) -> bool {
        let samples = self.boundary_samples(self.boundary_length() / 4096.0);
        let mut total = 0.0;
        for w in samples.windows(2) {
            let a = w[0].point - p;
            let b = w[1].point - p;
            total += a.cross(b).atan2(a.dot(b));
        }
        total.abs() > PI
    }

    /// Point on the boundary at chain arc length `s`.
    pub fn boundary_point_at(&self, s: f64) -> Point {
        let s = s.clamp(0.0, self.boundary_length());
        for k in 0..6 {
            if s <= self.cum[k + 1] || k == 5 {
                let local = (s - self.cum[k]).clamp(0.0, self.chain[k].arc.length());
                return self.chain[k].arc.point_at(local);
            }
        }
        unreachable!()
    }

    fn boundary_samples(&self, step: f64) -> Vec<Sample<(usize, f64)>> {
        let mut out = Vec::new();
        for (k, b) in self.chain.iter().enumerate() {
            let len = b.arc.length();
            if len <= 1e-12 {
                continue;
            }
            let n = (len / step).ceil().max(1.0) as usize;
            for i in 0..=n {
                let s = len * i as f64 / n as f64;
                out.push(Sample {
                    point: b.arc.point_at(s),
                    tag: (k, s),
                });
            }
        }
        out
    }

    /// Diameter report: dense boundary sampling refined locally is the
    /// authoritative value; the endpoint pair and the middle-circle far
    /// pair are carried as analytic cross-checks.
    pub fn diameter(&self) -> DiameterReport {
        let samples = self.boundary_samples(DIAM_STEP);
        let hull = convex_hull(samples);
        let (_, sa, sb) = hull_diameter(&hull);
        let (value, pa, pb) = self.refine_pair(sa, sb);

        let candidate_endpoints = self.x.position.distance(self.y.position);
        let candidate_middle = self.middle_far_pair().map(|(z, w)| z.distance(w));
        let sampled = value;
        let candidate_max = candidate_middle
            .unwrap_or(f64::NEG_INFINITY)
            .max(candidate_endpoints);
        DiameterReport {
            value,
            witness: (pa, pb),
            candidate_endpoints,
            candidate_middle,
            sampled,
            disagreement: (candidate_max - value).abs() > 1e-6,
        }
    }

    /// Far points of the two middle circles along their center line, when
    /// both land on the actual boundary arcs.
    pub fn middle_far_pair(&self) -> Option<(Point, Point)> {
        let (upper_arc, lower_arc) = self.middle_arcs();
        let cu = self.upper_middle.center;
        let cl = self.lower_middle.center;
        let d = cu.distance(cl);
        if d <= 1e-12 {
            return None;
        }
        let u = (cu - cl) * (1.0 / d);
        let z = cu + u;
        let w = cl + (-u);
        let z_on = arc_contains_angle(upper_arc, (z - cu).angle());
        let w_on = arc_contains_angle(lower_arc, (w - cl).angle());
        if z_on && w_on {
            Some((z, w))
        } else {
            None
        }
    }

    fn refine_pair(
        &self,
        sa: Sample<(usize, f64)>,
        sb: Sample<(usize, f64)>,
    ) -> (f64, Point, Point) {
        let arc_a = &self.chain[sa.tag.0].arc;
        let arc_b = &self.chain[sb.tag.0].arc;
        let window = 2.0 * DIAM_STEP;
        let mut ua = sa.tag.1;
        let mut ub = sb.tag.1;
        for _ in 0..4 {
            let qb = arc_b.point_at(ub);
            let (na, _) = golden_max(
                (ua - window).max(0.0),
                (ua + window).min(arc_a.length()),
                |t| arc_a.point_at(t).distance(qb),
            );
            ua = na;
            let qa = arc_a.point_at(ua);
            let (nb, _) = golden_max(
                (ub - window).max(0.0),
                (ub + window).min(arc_b.length()),
                |t| arc_b.point_at(t).distance(qa),
            );
            ub = nb;
        }
        let pa = arc_a.point_at(ua);
        let pb = arc_b.point_at(ub);
        (pa.distance(pb), pa, pb)
    }

    /// Contact structure of a path against the region: containment,
    /// boundary contact events split into tangencies and crossings,
    /// coincidence runs, and returning points.
    pub fn path_relation(&self, path: &CurvaturePath) -> RelationReport {
        let total = path.total_length();
        let mut coincidences: Vec<CoincidenceRun> = Vec::new();
        let mut contacts: Vec<ContactEvent> = Vec::new();

        let mut cum = 0.0;
        for seg in path.segments() {
            for b in &self.chain {
                if b.arc.length() <= 1e-9 {
                    continue;
                }
                match segment_hits(seg, &PathSegment::Arc(b.arc)) {
                    SegOverlap::None => {}
                    SegOverlap::Coincident { range1, .. } => {
                        coincidences.push(CoincidenceRun {
                            s_start: cum + range1.0,
                            s_end: cum + range1.1,
                            arc: b.id,
                        });
                    }
                    SegOverlap::Hits(hits) => {
                        for h in hits {
                            contacts.push(ContactEvent {
                                s: cum + h.s1,
                                point: h.point,
                                arc: b.id,
                                part: self.part_of(h.point),
                                kind: ContactKind::Tangent, // classified below
                                at_path_endpoint: false,
                            });
                        }
                    }
                }
            }
            cum += seg.length();
        }

        coincidences.sort_by(|a, b| a.s_start.partial_cmp(&b.s_start).expect("finite"));
        merge_runs(&mut coincidences);
        contacts.retain(|c| {
            !coincidences
                .iter()
                .any(|r| c.s >= r.s_start - 1e-7 && c.s <= r.s_end + 1e-7)
        });
        // The ends of a coincidence run are contacts in their own right:
        // the path can pass between the closed region and its exterior
        // exactly there (leaving the boundary past an arc end).
        for r in &coincidences {
            for s in [r.s_start, r.s_end] {
                contacts.push(ContactEvent {
                    s,
                    point: path.point_at(s),
                    arc: r.arc,
                    part: self.part_of(path.point_at(s)),
                    kind: ContactKind::Tangent, // classified below
                    at_path_endpoint: false,
                });
            }
        }
        contacts.sort_by(|a, b| a.s.partial_cmp(&b.s).expect("finite"));
        contacts.dedup_by(|a, b| (a.s - b.s).abs() <= 1e-7);

        // Classify each contact by the side of the boundary shortly before
        // and after it.
        const WINDOW: f64 = 1e-4;
        let status = |s: f64| -> bool {
            // true = in the closed region
            !matches!(self.locate_point(path.point_at(s)), RegionLocation::Outside)
        };
        for c in contacts.iter_mut() {
            let before = c.s - WINDOW;
            let after = c.s + WINDOW;
            c.at_path_endpoint = c.s <= 1e-7 || c.s >= total - 1e-7;
            let kind = if c.at_path_endpoint {
                let side = if c.s <= 1e-7 {
                    status(after.min(total))
                } else {
                    status(before.max(0.0))
                };
                if side {
                    ContactKind::Tangent
                } else {
                    ContactKind::Crossing
                }
            } else {
                let b = status(before.max(0.0));
                let a = status(after.min(total));
                if a == b {
                    ContactKind::Tangent
                } else {
                    ContactKind::Crossing
                }
            };
            c.kind = kind;
        }

        // Containment: sample the path; crossings also witness an exit.
        let n = (total / 1e-3).ceil().clamp(64.0, 40_000.0) as usize;
        let mut sample_parts: Vec<(f64, Option<Subregion>)> = Vec::with_capacity(n + 1);
        let mut in_omega = true;
        for i in 0..=n {
            let s = total * i as f64 / n as f64;
            let p = path.point_at(s);
            match self.locate_point(p) {
                RegionLocation::Outside => {
                    in_omega = false;
                    sample_parts.push((s, None));
                }
                RegionLocation::Inside | RegionLocation::OnBoundary { .. } => {
                    sample_parts.push((s, Some(self.part_of(p))));
                }
            }
        }
        if contacts
            .iter()
            .any(|c| c.kind == ContactKind::Crossing && !c.at_path_endpoint)
        {
            in_omega = false;
        }

        let visited_r2_before = |s: f64| {
            sample_parts
                .iter()
                .take_while(|(t, _)| *t < s)
                .any(|(_, p)| *p == Some(Subregion::R2))
        };
        let visited_r2_after = |s: f64| {
            sample_parts
                .iter()
                .skip_while(|(t, _)| *t <= s)
                .any(|(_, p)| *p == Some(Subregion::R2))
        };
        let returning_points: Vec<ContactEvent> = contacts
            .iter()
            .filter(|c| c.kind == ContactKind::Tangent && !c.at_path_endpoint)
            .filter(|c| match c.part {
                Subregion::R1 => visited_r2_before(c.s),
                Subregion::R3 => visited_r2_after(c.s),
                Subregion::R2 => false,
            })
            .copied()
            .collect();

        RelationReport {
            in_omega,
            contacts,
            coincidences,
            returning_points,
        }
    }
}

fn merge_runs(runs: &mut Vec<CoincidenceRun>) {
    let mut out: Vec<CoincidenceRun> = Vec::with_capacity(runs.len());
    for r in runs.iter() {
        match out.last_mut() {
            Some(last) if last.arc == r.arc && r.s_start <= last.s_end + 1e-7 => {
                last.s_end = last.s_end.max(r.s_end);
            }
            _ => out.push(*r),
        }
    }
    *runs = out;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{normalize_problem, GeomError};
    use crate::path::PathBuilder;

    fn cfg(x: f64, y: f64, deg: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), deg.to_radians())
    }

    fn inst(y: Configuration) -> ProblemInstance {
        normalize_problem(&cfg(0.0, 0.0, 0.0), &y, 1.0).unwrap()
    }

    fn canonical() -> OmegaRegion {
        construct_region(&inst(cfg(2.0, 0.0, 0.0))).expect("canonical region exists")
    }

    #[test]
    fn canonical_region_numbers() {
        let region = canonical();
        let sqrt3 = 3.0f64.sqrt();

        for theta in region.thetas() {
            assert!((theta - PI / 6.0).abs() <= 1e-9, "theta {theta}");
        }
        let (upper, lower) = region.middle_circles();
        assert!(upper.center.distance(Point::new(1.0, 1.0 - sqrt3)) <= 1e-9);
        assert!(lower.center.distance(Point::new(1.0, sqrt3 - 1.0)) <= 1e-9);

        let expected = [
            Point::new(0.5, sqrt3 / 2.0 - 1.0),
            Point::new(0.5, 1.0 - sqrt3 / 2.0),
            Point::new(1.5, sqrt3 / 2.0 - 1.0),
            Point::new(1.5, 1.0 - sqrt3 / 2.0),
        ];
        for (inf, exp) in region.inflections().iter().zip(expected) {
            assert!(inf.point.distance(exp) <= 1e-9, "{:?} vs {:?}", inf.point, exp);
        }

        let (um, lm) = region.middle_arcs();
        assert!((um.sweep.abs() - PI / 3.0).abs() <= 1e-9);
        assert!((lm.sweep.abs() - PI / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn no_region_for_far_or_single_arc_instances() {
        assert!(construct_region(&inst(cfg(5.0, 0.0, 0.0))).is_none());
        // Single-arc subcase: the goal shares the start's left circle.
        assert!(construct_region(&inst(cfg(1.0, 1.0, 90.0))).is_none());
    }

    #[test]
    fn locate_canonical_points() {
        let region = canonical();
        assert_eq!(region.locate_point(Point::new(1.0, 0.0)), RegionLocation::Inside);
        assert_eq!(region.locate_point(Point::new(1.0, 1.0)), RegionLocation::Outside);
        match region.locate_point(Point::new(1.0, 2.0 - 3.0f64.sqrt())) {
            RegionLocation::OnBoundary { part, arc } => {
                assert_eq!(part, Subregion::R2);
                assert_eq!(arc, BoundaryArcId::UpperMiddle);
            }
            other => panic!("expected boundary, got {other:?}"),
        }
    }

    #[test]
    fn straight_axis_path_stays_inside() {
        let region = canonical();
        let path = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .straight(2.0)
            .build()
            .unwrap();
        let report = region.path_relation(&path);
        assert!(report.in_omega);
        assert!(report.returning_points.is_empty());
        assert!(report.contacts.iter().all(|c| c.at_path_endpoint));
    }

    #[test]
    fn long_ccc_candidate_leaves_region() {
        let region = canonical();
        let instance = inst(cfg(2.0, 0.0, 0.0));
        let path = crate::dubins::solve_word(&instance, crate::dubins::DubinsWord::Lrl).unwrap();
        let report = region.path_relation(&path);
        assert!(!report.in_omega);
        let crossings = report
            .contacts
            .iter()
            .filter(|c| c.kind == ContactKind::Crossing)
            .count();
        assert!(crossings >= 2, "contacts: {:?}", report.contacts);
    }

    #[test]
    fn boundary_coincidence_is_reported() {
        let region = canonical();
        let (um, _) = region.middle_arcs();
        // Trace the upper middle arc exactly, extended nowhere.
        let path = CurvaturePath::new(vec![PathSegment::Arc(*um)]).unwrap();
        let report = region.path_relation(&path);
        assert!(report.in_omega);
        assert!(report
            .coincidences
            .iter()
            .any(|r| r.arc == BoundaryArcId::UpperMiddle
                && (r.s_end - r.s_start - um.length()).abs() <= 1e-6));
    }

    #[test]
    fn canonical_diameter_is_two() {
        let region = canonical();
        let report = region.diameter();
        assert!((report.value - 2.0).abs() <= 1e-6, "value {}", report.value);
        assert!(!report.disagreement);
        assert!((report.candidate_endpoints - 2.0).abs() <= 1e-12);
        assert!(report.value < 4.0);
        // Independent dense pairwise oracle.
        let samples = region.boundary_samples(2e-3);
        let mut oracle = 0.0f64;
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                oracle = oracle.max(samples[i].point.distance(samples[j].point));
            }
        }
        assert!((report.value - oracle).abs() <= 1e-5);
    }

    #[test]
    fn jordan_parity_for_inside_outside_segment() {
        let region = canonical();
        let inside = Point::new(1.0, 0.0);
        let outside = Point::new(1.0, 3.0);
        let seg = PathSegment::Line(LineSeg::new(inside, outside));
        let mut crossings = 0;
        for b in region.boundary() {
            if b.arc.length() <= 1e-9 {
                continue;
            }
            if let SegOverlap::Hits(h) = segment_hits(&seg, &PathSegment::Arc(b.arc)) {
                crossings += h.iter().filter(|hit| !hit.tangential).count();
            }
        }
        assert_eq!(crossings % 2, 1);
    }

    #[test]
    fn mutual_tangent_error_type_is_reused() {
        // Exercising the error path keeps the geom contract visible here.
        let c1 = Circle::unit(Point::new(0.0, 1.0), crate::geom::Orientation::Left);
        let c2 = Circle::unit(Point::new(6.0, 1.0), crate::geom::Orientation::Left);
        assert!(matches!(
            mutual_tangent_circle(&c1, &c2, Side::Below),
            Err(GeomError::NoTangentCircle(_))
        ));
    }
}
