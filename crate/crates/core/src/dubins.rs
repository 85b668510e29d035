//! The six Dubins words between two configurations: closed-form tangent
//! constructions, no sampling. Arcs have unit radius (canonical frame) and
//! lengths in [0, 2pi); a word that forces a zero-length arc or segment is
//! still returned as a degenerate member.

use std::fmt;

use thiserror::Error;

use crate::geom::{
    adjacent_circles, ccw_delta, cw_delta, Circle, Orientation, Point, ProblemInstance,
};
use crate::path::{ArcSeg, CurvaturePath, LineSeg, PathSegment};

use std::f64::consts::PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DubinsError {
    #[error("no feasible word for the instance (identical configurations?)")]
    EmptyCandidates,
}

/// Word order doubles as the deterministic tie-break rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DubinsWord {
    Lsl,
    Rsr,
    Lsr,
    Rsl,
    Lrl,
    Rlr,
}

impl DubinsWord {
    pub const ALL: [DubinsWord; 6] = [
        DubinsWord::Lsl,
        DubinsWord::Rsr,
        DubinsWord::Lsr,
        DubinsWord::Rsl,
        DubinsWord::Lrl,
        DubinsWord::Rlr,
    ];

    pub fn is_ccc(self) -> bool {
        matches!(self, DubinsWord::Lrl | DubinsWord::Rlr)
    }
}

impl fmt::Display for DubinsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DubinsWord::Lsl => "LSL",
            DubinsWord::Rsr => "RSR",
            DubinsWord::Lsr => "LSR",
            DubinsWord::Rsl => "RSL",
            DubinsWord::Lrl => "LRL",
            DubinsWord::Rlr => "RLR",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for DubinsWord {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "LSL" => Ok(DubinsWord::Lsl),
            "RSR" => Ok(DubinsWord::Rsr),
            "LSR" => Ok(DubinsWord::Lsr),
            "RSL" => Ok(DubinsWord::Rsl),
            "LRL" => Ok(DubinsWord::Lrl),
            "RLR" => Ok(DubinsWord::Rlr),
            other => Err(format!("unknown word {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub word: DubinsWord,
    pub path: CurvaturePath,
    pub length: f64,
}

/// Feasible word solutions sorted by length, ties broken by word order.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    entries: Vec<Candidate>,
}

impl CandidateSet {
    pub fn entries(&self) -> &[Candidate] {
        &self.entries
    }

    pub fn shortest(&self) -> &Candidate {
        &self.entries[0]
    }

    pub fn get(&self, word: DubinsWord) -> Option<&Candidate> {
        self.entries.iter().find(|c| c.word == word)
    }
}

/// Sweep of the arc taking `from_angle` to `to_angle` in the circle's
/// turning sense, normalized to magnitude [0, 2pi).
fn arc_sweep(orientation: Orientation, from_angle: f64, to_angle: f64) -> f64 {
    match orientation {
        Orientation::Left => ccw_delta(from_angle, to_angle),
        Orientation::Right => -cw_delta(from_angle, to_angle),
    }
}

fn push_arc(segs: &mut Vec<PathSegment>, circle: &Circle, from_angle: f64, sweep: f64) {
    if sweep.abs() > 1e-12 {
        segs.push(PathSegment::Arc(ArcSeg::new(
            circle.center,
            circle.radius,
            from_angle,
            sweep,
        )));
    }
}

fn push_line(segs: &mut Vec<PathSegment>, from: Point, to: Point) {
    if from.distance(to) > 1e-12 {
        segs.push(PathSegment::Line(LineSeg::new(from, to)));
    }
}

fn finish(segs: Vec<PathSegment>) -> Option<CurvaturePath> {
    if segs.is_empty() {
        return None;
    }
    debug_assert!(CurvaturePath::new(segs.clone()).is_ok());
    Some(CurvaturePath::from_segments_unchecked(segs))
}

/// Solves one word for a normalized instance. `None` means the word is
/// infeasible (inner tangent nonexistent, CCC centers too far apart, or the
/// construction degenerates to an empty path).
pub fn solve_word(instance: &ProblemInstance, word: DubinsWord) -> Option<CurvaturePath> {
    let x = instance.x();
    let y = instance.y();
    let (xl, xr) = adjacent_circles(x);
    let (yl, yr) = adjacent_circles(y);
    match word {
        DubinsWord::Lsl => solve_csc(instance, &xl, &yl),
        DubinsWord::Rsr => solve_csc(instance, &xr, &yr),
        DubinsWord::Lsr => solve_csc(instance, &xl, &yr),
        DubinsWord::Rsl => solve_csc(instance, &xr, &yl),
        DubinsWord::Lrl => solve_ccc(instance, &xl, &yl),
        DubinsWord::Rlr => solve_ccc(instance, &xr, &yr),
    }
}

fn solve_csc(instance: &ProblemInstance, c1: &Circle, c3: &Circle) -> Option<CurvaturePath> {
    let x = instance.x();
    let y = instance.y();
    let d = c1.center.distance(c3.center);
    let mut segs = Vec::with_capacity(3);

    if c1.orientation == c3.orientation {
        // Outer tangent; with equal radii it is parallel to the center line.
        if d <= 1e-12 {
            // Same circle: the word collapses to a single arc.
            let from = (x.position - c1.center).angle();
            let to = (y.position - c1.center).angle();
            push_arc(&mut segs, c1, from, arc_sweep(c1.orientation, from, to));
            return finish(segs);
        }
        let u = (c3.center - c1.center) * (1.0 / d);
        let radial = match c1.orientation {
            Orientation::Left => u.rot_neg90(),
            Orientation::Right => u.rot90(),
        };
        let t1 = c1.center + radial;
        let t3 = c3.center + radial;
        let from1 = (x.position - c1.center).angle();
        push_arc(
            &mut segs,
            c1,
            from1,
            arc_sweep(c1.orientation, from1, radial.angle()),
        );
        push_line(&mut segs, t1, t3);
        let to3 = (y.position - c3.center).angle();
        push_arc(
            &mut segs,
            c3,
            radial.angle(),
            arc_sweep(c3.orientation, radial.angle(), to3),
        );
        finish(segs)
    } else {
        // Inner tangent exists only when the circles do not overlap.
        if d < 2.0 - 1e-12 {
            return None;
        }
        let ell = (d * d - 4.0).max(0.0).sqrt();
        let u = (c3.center - c1.center) * (1.0 / d);
        let (cos_a, sin_a) = (ell / d, 2.0 / d);
        let (v, r1, r3) = match c1.orientation {
            Orientation::Left => {
                let v = u.rotated_cs(cos_a, sin_a);
                (v, v.rot_neg90(), v.rot90())
            }
            Orientation::Right => {
                let v = u.rotated_cs(cos_a, -sin_a);
                (v, v.rot90(), v.rot_neg90())
            }
        };
        let t1 = c1.center + r1;
        let t3 = c3.center + r3;
        let from1 = (x.position - c1.center).angle();
        push_arc(
            &mut segs,
            c1,
            from1,
            arc_sweep(c1.orientation, from1, r1.angle()),
        );
        push_line(&mut segs, t1, t3);
        let to3 = (y.position - c3.center).angle();
        push_arc(
            &mut segs,
            c3,
            r3.angle(),
            arc_sweep(c3.orientation, r3.angle(), to3),
        );
        debug_assert!((t1.distance(t3) - ell).abs() <= 1e-9);
        let _ = v;
        finish(segs)
    }
}

/// CCC construction. Both mutually tangent middle circles are generated;
/// the kept branch is the one whose middle arc measures at least pi, the
/// locally optimal family for the word.
fn solve_ccc(instance: &ProblemInstance, c1: &Circle, c3: &Circle) -> Option<CurvaturePath> {
    let x = instance.x();
    let y = instance.y();
    let d = c1.center.distance(c3.center);
    if d <= 1e-12 || d > 4.0 {
        return None;
    }
    let u = (c3.center - c1.center) * (1.0 / d);
    let half = 0.5 * d;
    let h = (4.0 - half * half).max(0.0).sqrt();
    let mid = c1.center.midpoint(c3.center);
    let n = u.rot90();
    let middle_orientation = c1.orientation.opposite();

    let mut best: Option<(f64, Vec<PathSegment>)> = None;
    for offset in [n * h, n * (-h)] {
        let m = Circle {
            center: mid + offset,
            radius: 1.0,
            orientation: middle_orientation,
        };
        let p1 = c1.center.midpoint(m.center);
        let p2 = c3.center.midpoint(m.center);

        let from1 = (x.position - c1.center).angle();
        let sweep1 = arc_sweep(c1.orientation, from1, (p1 - c1.center).angle());
        let from_m = (p1 - m.center).angle();
        let sweep_m = arc_sweep(middle_orientation, from_m, (p2 - m.center).angle());
        let from3 = (p2 - c3.center).angle();
        let sweep3 = arc_sweep(c3.orientation, from3, (y.position - c3.center).angle());

        if sweep_m.abs() < PI - 1e-9 {
            continue;
        }
        let mut segs = Vec::with_capacity(3);
        push_arc(&mut segs, c1, from1, sweep1);
        push_arc(&mut segs, &m, from_m, sweep_m);
        push_arc(&mut segs, c3, from3, sweep3);
        if segs.is_empty() {
            continue;
        }
        let length: f64 = segs.iter().map(|s| s.length()).sum();
        match &best {
            Some((cur, _)) if *cur <= length => {}
            _ => best = Some((length, segs)),
        }
    }
    best.and_then(|(_, segs)| finish(segs))
}

/// All feasible words, sorted ascending by length with the word order as a
/// deterministic tie-break. Distinct configurations always admit at least
/// one word; an empty set is reported as an internal error.
pub fn candidate_set(instance: &ProblemInstance) -> Result<CandidateSet, DubinsError> {
    let mut entries: Vec<Candidate> = DubinsWord::ALL
        .iter()
        .filter_map(|&word| {
            solve_word(instance, word).map(|path| Candidate {
                word,
                length: path.total_length(),
                path,
            })
        })
        .collect();
    if entries.is_empty() {
        return Err(DubinsError::EmptyCandidates);
    }
    entries.sort_by(|a, b| {
        a.length
            .partial_cmp(&b.length)
            .expect("finite lengths")
            .then(a.word.cmp(&b.word))
    });
    Ok(CandidateSet { entries })
}

pub fn shortest_path(instance: &ProblemInstance) -> Result<(DubinsWord, CurvaturePath), DubinsError> {
    let set = candidate_set(instance)?;
    let head = set.shortest();
    Ok((head.word, head.path.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{normalize_problem, Configuration};
    use crate::path::validate_path;

    fn cfg(x: f64, y: f64, deg: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), deg.to_radians())
    }

    fn inst(y: Configuration) -> ProblemInstance {
        normalize_problem(&cfg(0.0, 0.0, 0.0), &y, 1.0).unwrap()
    }

    #[test]
    fn lsl_degenerates_to_straight_segment() {
        let instance = inst(cfg(2.0, 0.0, 0.0));
        let path = solve_word(&instance, DubinsWord::Lsl).unwrap();
        assert_eq!(path.segments().len(), 1);
        assert!((path.total_length() - 2.0).abs() <= 1e-12);
        assert!(validate_path(&path, &instance).is_valid());
    }

    #[test]
    fn lsl_collapses_to_half_circle() {
        let instance = inst(cfg(0.0, 2.0, 180.0));
        let path = solve_word(&instance, DubinsWord::Lsl).unwrap();
        assert_eq!(path.segments().len(), 1);
        assert!((path.total_length() - PI).abs() <= 1e-9);
        assert!(validate_path(&path, &instance).is_valid());
    }

    #[test]
    fn lsr_is_never_shorter_than_the_gap() {
        let instance = inst(cfg(2.0, 0.0, 0.0));
        match solve_word(&instance, DubinsWord::Lsr) {
            None => {}
            Some(p) => {
                assert!(validate_path(&p, &instance).is_valid());
                assert!(p.total_length() >= 2.0 - 1e-9);
            }
        }
    }

    #[test]
    fn ccc_keeps_the_long_middle_branch() {
        let instance = inst(cfg(2.0, 0.0, 0.0));
        let path = solve_word(&instance, DubinsWord::Lrl).unwrap();
        assert!(validate_path(&path, &instance).is_valid());
        assert_eq!(path.segments().len(), 3);
        let PathSegment::Arc(middle) = path.segments()[1] else {
            panic!("middle segment must be an arc")
        };
        assert!(middle.sweep.abs() >= PI);
        // Middle circle sits on the far side of the left adjacent centers.
        assert!(middle.center.distance(Point::new(1.0, 1.0 + 3.0f64.sqrt())) <= 1e-9);
        assert!((path.total_length() - 10.0 * PI / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn candidate_set_sorted_and_valid() {
        let instance = inst(cfg(2.0, 0.0, 0.0));
        let set = candidate_set(&instance).unwrap();
        assert!((set.shortest().length - 2.0).abs() <= 1e-12);
        let mut prev = 0.0;
        for c in set.entries() {
            assert!(validate_path(&c.path, &instance).is_valid(), "{}", c.word);
            assert!(c.length + 1e-12 >= prev);
            assert!(c.length + 1e-12 >= 2.0); // metric lower bound
            prev = c.length;
        }
    }

    #[test]
    fn shortest_paths_for_named_instances() {
        let far = inst(cfg(4.0, 0.0, 0.0));
        let (word, path) = shortest_path(&far).unwrap();
        assert!((path.total_length() - 4.0).abs() <= 1e-12);
        assert!(matches!(word, DubinsWord::Lsl | DubinsWord::Rsr));

        let half = inst(cfg(0.0, 2.0, 180.0));
        let (_, path) = shortest_path(&half).unwrap();
        assert!((path.total_length() - PI).abs() <= 1e-9);
    }

    #[test]
    fn reversal_swaps_word_roles() {
        let y = cfg(1.7, 0.9, 40.0);
        let forward = inst(y);
        // Reversed problem: swap endpoints and flip both headings.
        let reversed = normalize_problem(
            &cfg(1.7, 0.9, 40.0 + 180.0),
            &cfg(0.0, 0.0, 180.0),
            1.0,
        )
        .unwrap();
        let f = candidate_set(&forward).unwrap();
        let r = candidate_set(&reversed).unwrap();
        let pairs = [
            (DubinsWord::Lsl, DubinsWord::Rsr),
            (DubinsWord::Rsr, DubinsWord::Lsl),
            (DubinsWord::Lsr, DubinsWord::Lsr),
            (DubinsWord::Rsl, DubinsWord::Rsl),
        ];
        for (a, b) in pairs {
            let la = f.get(a).map(|c| c.length);
            let lb = r.get(b).map(|c| c.length);
            match (la, lb) {
                (Some(la), Some(lb)) => assert!((la - lb).abs() <= 1e-9, "{a}->{b}: {la} vs {lb}"),
                (None, None) => {}
                other => panic!("asymmetric feasibility {a}->{b}: {other:?}"),
            }
        }
    }
}
