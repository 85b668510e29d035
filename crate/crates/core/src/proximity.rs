//! Endpoint classification by the distances between adjacent-circle
//! centers. The four raw distance conditions split the plane of endpoint
//! configurations into classes A-D; under the close condition (both
//! left-left and right-right center distances below 4) the class-D
//! subcases distinguish exact single-arc and double-arc solutions from
//! configurations that enclose a trapping region.

use std::fmt;

use crate::geom::{
    adjacent_circles, ccw_delta, cw_delta, Orientation, ProblemInstance, GEOM_EPS,
};
use crate::omega;
use crate::path::{ArcSeg, CurvaturePath, PathSegment};

use std::f64::consts::PI;

/// Raw distance condition: which of the left-left / right-right adjacent
/// center distances fall below 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawCondition {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for RawCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RawCondition::I => "I",
            RawCondition::II => "II",
            RawCondition::III => "III",
            RawCondition::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProximityClass {
    A,
    B,
    C,
    D,
}

impl fmt::Display for ProximityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProximityClass::A => "A",
            ProximityClass::B => "B",
            ProximityClass::C => "C",
            ProximityClass::D => "D",
        };
        f.write_str(s)
    }
}

/// Class-D refinement. The three cases are mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DSubcase {
    CarriesOmega,
    SingleArc,
    DoubleArc,
}

impl fmt::Display for DSubcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DSubcase::CarriesOmega => "carries_omega",
            DSubcase::SingleArc => "single_arc",
            DSubcase::DoubleArc => "double_arc",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProximityReport {
    pub d_ll: f64,
    pub d_rr: f64,
    pub raw: RawCondition,
    pub class: ProximityClass,
    pub d_subcase: Option<DSubcase>,
    /// Goal has positive abscissa and lies outside both adjacent disks of
    /// the start.
    pub forward_region: bool,
    /// Goal position strictly inside one of the start's adjacent disks;
    /// every path to it is free.
    pub y_inside_adjacent_disk: bool,
}

/// Adjacent-center distances and the raw condition they satisfy. Exact
/// distance 4 counts as the non-strict side.
pub fn raw_proximity(instance: &ProblemInstance) -> (f64, f64, RawCondition) {
    let (xl, xr) = adjacent_circles(instance.x());
    let (yl, yr) = adjacent_circles(instance.y());
    let d_ll = xl.center.distance(yl.center);
    let d_rr = xr.center.distance(yr.center);
    let raw = match (d_ll < 4.0, d_rr < 4.0) {
        (false, false) => RawCondition::I,
        (true, false) => RawCondition::II,
        (false, true) => RawCondition::III,
        (true, true) => RawCondition::IV,
    };
    if raw == RawCondition::IV {
        // Both close conditions force the endpoints themselves within 4.
        debug_assert!(instance.x().position.distance(instance.y().position) < 4.0);
    }
    (d_ll, d_rr, raw)
}

/// The exact unit-arc realization of the endpoint condition, when the goal
/// shares an adjacent circle with the start and the forced arc is shorter
/// than pi.
pub fn single_arc_solution(instance: &ProblemInstance) -> Option<CurvaturePath> {
    let x = instance.x();
    let y = instance.y();
    let (xl, xr) = adjacent_circles(x);
    let (yl, yr) = adjacent_circles(y);
    for (cx, cy) in [(xl, yl), (xr, yr)] {
        if cx.center.distance(cy.center) > GEOM_EPS {
            continue;
        }
        let from = (x.position - cx.center).angle();
        let to = (y.position - cx.center).angle();
        let sweep = match cx.orientation {
            Orientation::Left => ccw_delta(from, to),
            Orientation::Right => -cw_delta(from, to),
        };
        if sweep.abs() > 1e-9 && sweep.abs() < PI {
            let arc = ArcSeg::new(cx.center, 1.0, from, sweep);
            return Some(CurvaturePath::from_segments_unchecked(vec![
                PathSegment::Arc(arc),
            ]));
        }
    }
    None
}

/// The exact two-arc realization: oppositely oriented unit arcs, both
/// shorter than pi, joined where an adjacent circle of the start is tangent
/// to the opposite-side adjacent circle of the goal.
pub fn double_arc_solution(instance: &ProblemInstance) -> Option<CurvaturePath> {
    let x = instance.x();
    let y = instance.y();
    let (xl, xr) = adjacent_circles(x);
    let (yl, yr) = adjacent_circles(y);
    for (cx, cy) in [(xl, yr), (xr, yl)] {
        if (cx.center.distance(cy.center) - 2.0).abs() > GEOM_EPS {
            continue;
        }
        let joint = cx.center.midpoint(cy.center);
        let from1 = (x.position - cx.center).angle();
        let to1 = (joint - cx.center).angle();
        let sweep1 = match cx.orientation {
            Orientation::Left => ccw_delta(from1, to1),
            Orientation::Right => -cw_delta(from1, to1),
        };
        let from2 = (joint - cy.center).angle();
        let to2 = (y.position - cy.center).angle();
        let sweep2 = match cy.orientation {
            Orientation::Left => ccw_delta(from2, to2),
            Orientation::Right => -cw_delta(from2, to2),
        };
        let nonzero = sweep1.abs() > 1e-9 && sweep2.abs() > 1e-9;
        if nonzero && sweep1.abs() < PI && sweep2.abs() < PI {
            let segs = vec![
                PathSegment::Arc(ArcSeg::new(cx.center, 1.0, from1, sweep1)),
                PathSegment::Arc(ArcSeg::new(cy.center, 1.0, from2, sweep2)),
            ];
            debug_assert!(CurvaturePath::new(segs.clone()).is_ok());
            return Some(CurvaturePath::from_segments_unchecked(segs));
        }
    }
    None
}

/// Full classification. Under the close condition the subcases are tested
/// in order: exact single arc, exact double arc, region construction; what
/// remains is class C.
pub fn classify_endpoints(instance: &ProblemInstance) -> ProximityReport {
    let (d_ll, d_rr, raw) = raw_proximity(instance);
    let x = instance.x();
    let y = instance.y();
    let (xl, xr) = adjacent_circles(x);
    let dl = y.position.distance(xl.center);
    let dr = y.position.distance(xr.center);
    let ahead = (y.position - x.position).dot(x.heading()) > 0.0;
    let forward_region = ahead && dl >= 1.0 - GEOM_EPS && dr >= 1.0 - GEOM_EPS;
    let y_inside_adjacent_disk = dl < 1.0 - GEOM_EPS || dr < 1.0 - GEOM_EPS;

    let (class, d_subcase) = match raw {
        RawCondition::I => (ProximityClass::A, None),
        RawCondition::II | RawCondition::III => (ProximityClass::B, None),
        RawCondition::IV => {
            if single_arc_solution(instance).is_some() {
                (ProximityClass::D, Some(DSubcase::SingleArc))
            } else if double_arc_solution(instance).is_some() {
                (ProximityClass::D, Some(DSubcase::DoubleArc))
            } else if omega::construct_region(instance).is_some() {
                (ProximityClass::D, Some(DSubcase::CarriesOmega))
            } else {
                (ProximityClass::C, None)
            }
        }
    };
    ProximityReport {
        d_ll,
        d_rr,
        raw,
        class,
        d_subcase,
        forward_region,
        y_inside_adjacent_disk,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{normalize_problem, Configuration, Point};
    use crate::path::validate_path;

    fn cfg(x: f64, y: f64, deg: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), deg.to_radians())
    }

    fn inst(y: Configuration) -> ProblemInstance {
        normalize_problem(&cfg(0.0, 0.0, 0.0), &y, 1.0).unwrap()
    }

    #[test]
    fn raw_condition_examples() {
        let (d_ll, d_rr, raw) = raw_proximity(&inst(cfg(5.0, 0.0, 0.0)));
        assert!((d_ll - 5.0).abs() <= 1e-12 && (d_rr - 5.0).abs() <= 1e-12);
        assert_eq!(raw, RawCondition::I);

        let (d_ll, d_rr, raw) = raw_proximity(&inst(cfg(2.0, 0.0, 0.0)));
        assert!((d_ll - 2.0).abs() <= 1e-12 && (d_rr - 2.0).abs() <= 1e-12);
        assert_eq!(raw, RawCondition::IV);

        // Adjacent centers of ((0,2), 180deg) are (0,1) and (0,3).
        let (d_ll, d_rr, raw) = raw_proximity(&inst(cfg(0.0, 2.0, 180.0)));
        assert!(d_ll.abs() <= 1e-12);
        assert!((d_rr - 4.0).abs() <= 1e-12);
        assert_eq!(raw, RawCondition::II);
    }

    #[test]
    fn exact_four_goes_to_the_nonstrict_side() {
        // Left-left distance exactly 4.
        let (d_ll, _, raw) = raw_proximity(&inst(cfg(4.0, 0.0, 0.0)));
        assert_eq!(d_ll, 4.0);
        assert_eq!(raw, RawCondition::I);
    }

    #[test]
    fn classify_far_instance_as_a() {
        let report = classify_endpoints(&inst(cfg(5.0, 0.0, 0.0)));
        assert_eq!(report.class, ProximityClass::A);
        assert_eq!(report.d_subcase, None);
        assert!(report.forward_region);
        assert!(!report.y_inside_adjacent_disk);
    }

    #[test]
    fn classify_canonical_as_carries_omega() {
        let report = classify_endpoints(&inst(cfg(2.0, 0.0, 0.0)));
        assert_eq!(report.class, ProximityClass::D);
        assert_eq!(report.d_subcase, Some(DSubcase::CarriesOmega));
    }

    #[test]
    fn classify_quarter_arc_as_single_arc() {
        let instance = inst(cfg(1.0, 1.0, 90.0));
        let report = classify_endpoints(&instance);
        assert_eq!(report.class, ProximityClass::D);
        assert_eq!(report.d_subcase, Some(DSubcase::SingleArc));
        let arc = single_arc_solution(&instance).unwrap();
        assert!(validate_path(&arc, &instance).is_valid());
        assert!((arc.total_length() - PI / 2.0).abs() <= 1e-9);
        assert!(arc.total_length() < PI);
    }

    #[test]
    fn classify_s_curve_as_double_arc() {
        // Quarter left then quarter right lands at (2, 2) heading +x.
        let instance = inst(cfg(2.0, 2.0, 0.0));
        let report = classify_endpoints(&instance);
        assert_eq!(report.class, ProximityClass::D);
        assert_eq!(report.d_subcase, Some(DSubcase::DoubleArc));
        let path = double_arc_solution(&instance).unwrap();
        assert!(validate_path(&path, &instance).is_valid());
        for seg in path.segments() {
            assert!(seg.length() < PI);
        }
        let PathSegment::Arc(a) = path.segments()[0] else {
            panic!()
        };
        let PathSegment::Arc(b) = path.segments()[1] else {
            panic!()
        };
        assert!(a.sweep.signum() != b.sweep.signum());
    }

    #[test]
    fn inside_adjacent_disk_flag() {
        let report = classify_endpoints(&inst(cfg(0.3, 0.9, 10.0)));
        assert!(report.y_inside_adjacent_disk);
        assert!(!report.forward_region);
    }
}
