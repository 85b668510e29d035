//! Free/trapped verdicts with machine-checkable certificates, the
//! parallel-tangent extension homotopy, minimum-length planning, and the
//! uniform-gradient feasibility check for decline design.
//!
//! Verdicts are certificate-based: the engine never claims a path free
//! without a witness, and claims trapped only when a region exists and the
//! path is embedded inside it. Everything else is reported unresolved
//! rather than guessed.

use std::fmt;

use thiserror::Error;

use crate::dubins::{candidate_set, DubinsError, DubinsWord};
use crate::geom::{adjacent_circles, Point, ProblemInstance, Vec2};
use crate::omega::{construct_region, OmegaRegion};
use crate::path::{
    concatenate, contains_long_arc, find_parallel_tangents, self_intersections, validate_path,
    CurvaturePath, LineSeg, PathBuilder, PathSegment,
};
use crate::proximity::{classify_endpoints, DSubcase, ProximityClass};

use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtendError {
    #[error("path has no parallel tangents to anchor the translation")]
    NoParallelTangents,
    #[error("target length {target} is shorter than the current length {current}")]
    TargetTooShort { current: f64, target: f64 },
    #[error("family parameter {r} outside [0, {r_max}]")]
    ParameterOutOfRange { r: f64, r_max: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanError {
    #[error("no free candidate can reach length {required} (shortest candidate {shortest})")]
    NoFreeCandidate { required: f64, shortest: f64 },
    #[error(transparent)]
    Dubins(#[from] DubinsError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradientError {
    #[error("maximum gradient must be positive, got {0}")]
    NonPositiveGradient(f64),
}

// ---------------------------------------------------------------------------
// Certificates and verdicts
// ---------------------------------------------------------------------------

/// Witness that a path can be deformed to arbitrarily large length.
#[derive(Debug, Clone, PartialEq)]
pub enum FreeCertificate {
    /// Merged arc run of length at least pi times its radius.
    LongArc { segment_index: usize },
    /// Antiparallel tangent pair anchoring the translation homotopy.
    ParallelTangents { s1: f64, s2: f64 },
    SelfIntersection { s1: f64, s2: f64 },
    /// Goal position strictly inside an adjacent disk of the start.
    EndpointInsideAdjacentDisk,
    /// Band construction: endpoints on a unit circle's chord with a path
    /// point beyond the far arc.
    CrossSectionBand {
        chord: (Point, Point),
        over_point: Point,
    },
}

impl fmt::Display for FreeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeCertificate::LongArc { segment_index } => {
                write!(f, "long_arc@{segment_index}")
            }
            FreeCertificate::ParallelTangents { .. } => f.write_str("parallel_tangents"),
            FreeCertificate::SelfIntersection { .. } => f.write_str("self_intersection"),
            FreeCertificate::EndpointInsideAdjacentDisk => {
                f.write_str("endpoint_inside_adjacent_disk")
            }
            FreeCertificate::CrossSectionBand { .. } => f.write_str("cross_section_band"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HomotopyVerdict {
    /// Embedded, contained in the region, no free certificate applies.
    TrappedInOmega { region: Box<OmegaRegion> },
    Free { certificate: FreeCertificate },
    Unresolved { reason: UnresolvedReason },
}

#[derive(Debug, Clone, PartialEq)]
pub enum UnresolvedReason {
    /// Region exists but the path leaves it and no certificate fires; the
    /// exterior space is not claimed to be entirely free.
    OutsideOmegaNoCertificate,
    /// No partition theory applies for this endpoint class.
    ClassWithoutPartition {
        class: ProximityClass,
        subcase: Option<DSubcase>,
    },
}

impl fmt::Display for UnresolvedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnresolvedReason::OutsideOmegaNoCertificate => {
                f.write_str("outside_region_no_certificate")
            }
            UnresolvedReason::ClassWithoutPartition { class, subcase } => match subcase {
                Some(sub) => write!(f, "class_{class}_{sub}"),
                None => write!(f, "class_{class}"),
            },
        }
    }
}

impl HomotopyVerdict {
    pub fn is_trapped(&self) -> bool {
        matches!(self, HomotopyVerdict::TrappedInOmega { .. })
    }

    pub fn is_free(&self) -> bool {
        matches!(self, HomotopyVerdict::Free { .. })
    }

    /// Compact label used in reports.
    pub fn label(&self) -> String {
        match self {
            HomotopyVerdict::TrappedInOmega { .. } => "trapped".to_string(),
            HomotopyVerdict::Free { certificate } => format!("free:{certificate}"),
            HomotopyVerdict::Unresolved { reason } => format!("unresolved:{reason}"),
        }
    }
}

/// First applicable certificate in the fixed order: long arc, parallel
/// tangents, self-intersection, goal inside an adjacent disk.
pub fn free_certificate(
    instance: &ProblemInstance,
    path: &CurvaturePath,
) -> Option<FreeCertificate> {
    if let Some(segment_index) = contains_long_arc(path) {
        return Some(FreeCertificate::LongArc { segment_index });
    }
    if let Some((s1, s2)) = find_parallel_tangents(path) {
        return Some(FreeCertificate::ParallelTangents { s1, s2 });
    }
    if let Some(hit) = self_intersections(path).first() {
        return Some(FreeCertificate::SelfIntersection {
            s1: hit.s1,
            s2: hit.s2,
        });
    }
    let (xl, xr) = adjacent_circles(instance.x());
    let y = instance.y().position;
    if y.distance(xl.center) < 1.0 - 1e-9 || y.distance(xr.center) < 1.0 - 1e-9 {
        return Some(FreeCertificate::EndpointInsideAdjacentDisk);
    }
    None
}

/// Band-construction certificate. Produced only when the hypotheses hold
/// verbatim: both endpoints lie on a unit circle whose center is on one
/// side of their chord, and some path point lies strictly beyond the arc
/// over the chord. Kept out of the default certificate order.
pub fn band_certificate(path: &CurvaturePath) -> Option<FreeCertificate> {
    let p = path.segments().first()?.start_point();
    let q = path.segments().last()?.end_point();
    let d = p.distance(q);
    if d <= 1e-9 || d > 2.0 {
        return None;
    }
    let mid = p.midpoint(q);
    let u = (q - p) * (1.0 / d);
    let n = u.rot90();
    let h = (1.0 - 0.25 * d * d).max(0.0).sqrt();
    for center in [mid + n * h, mid + n * (-h)] {
        let up = (mid - center).normalized().unwrap_or(n);
        let total = path.total_length();
        let steps = (total / 1e-3).ceil().clamp(16.0, 20_000.0) as usize;
        for i in 0..=steps {
            let s = total * i as f64 / steps as f64;
            let pt = path.point_at(s);
            let radial = pt - center;
            if radial.norm() > 1.0 + 1e-9 && radial.dot(up) > 0.0 {
                return Some(FreeCertificate::CrossSectionBand {
                    chord: (p, q),
                    over_point: pt,
                });
            }
        }
    }
    None
}

/// Verdict for one path: free with a certificate; trapped when a region
/// exists and the path is embedded inside it; unresolved otherwise.
pub fn classify_homotopy(instance: &ProblemInstance, path: &CurvaturePath) -> HomotopyVerdict {
    if let Some(certificate) = free_certificate(instance, path) {
        return HomotopyVerdict::Free { certificate };
    }
    let report = classify_endpoints(instance);
    if report.class == ProximityClass::D && report.d_subcase == Some(DSubcase::CarriesOmega) {
        let region = construct_region(instance).expect("carries_omega implies a region");
        let relation = region.path_relation(path);
        if relation.in_omega {
            // No self-intersection certificate fired, so the path is
            // embedded.
            return HomotopyVerdict::TrappedInOmega {
                region: Box::new(region),
            };
        }
        return HomotopyVerdict::Unresolved {
            reason: UnresolvedReason::OutsideOmegaNoCertificate,
        };
    }
    HomotopyVerdict::Unresolved {
        reason: UnresolvedReason::ClassWithoutPartition {
            class: report.class,
            subcase: report.d_subcase,
        },
    }
}

// ---------------------------------------------------------------------------
// Extension homotopy
// ---------------------------------------------------------------------------

/// One-parameter family of paths obtained by translating the subpath
/// between a pair of antiparallel tangents along the tangent ray and
/// closing the gap with straight segments. Length grows exactly linearly:
/// length(r) = base + 2r.
#[derive(Debug, Clone)]
pub struct HomotopyFamily {
    prefix: Vec<PathSegment>,
    middle: Vec<PathSegment>,
    suffix: Vec<PathSegment>,
    anchor1: Point,
    anchor2: Point,
    dir: Vec2,
    base_length: f64,
    r_max: f64,
}

impl HomotopyFamily {
    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn base_length(&self) -> f64 {
        self.base_length
    }

    pub fn length_at(&self, r: f64) -> f64 {
        self.base_length + 2.0 * r
    }

    /// Family member at parameter `r` in [0, r_max].
    pub fn member(&self, r: f64) -> Result<CurvaturePath, ExtendError> {
        if !(0.0..=self.r_max + 1e-12).contains(&r) {
            return Err(ExtendError::ParameterOutOfRange {
                r,
                r_max: self.r_max,
            });
        }
        let mut segs: Vec<PathSegment> = Vec::with_capacity(
            self.prefix.len() + self.middle.len() + self.suffix.len() + 2,
        );
        segs.extend_from_slice(&self.prefix);
        let shift = self.dir * r;
        if r > 1e-12 {
            segs.push(PathSegment::Line(LineSeg::new(
                self.anchor1,
                self.anchor1 + shift,
            )));
        }
        segs.extend(self.middle.iter().map(|s| s.translated(shift)));
        if r > 1e-12 {
            segs.push(PathSegment::Line(LineSeg::new(
                self.anchor2 + shift,
                self.anchor2,
            )));
        }
        segs.extend_from_slice(&self.suffix);
        Ok(CurvaturePath::from_segments_unchecked(segs))
    }
}

/// Extends a path with parallel tangents to an exact target length. The
/// insertion length solves target = base + 2r in closed form, so the
/// result hits the target exactly and keeps both endpoint configurations.
pub fn extend_path(
    path: &CurvaturePath,
    target_length: f64,
) -> Result<(CurvaturePath, HomotopyFamily), ExtendError> {
    let (s1, s2) = find_parallel_tangents(path).ok_or(ExtendError::NoParallelTangents)?;
    let current = path.total_length();
    if target_length < current - 1e-9 {
        return Err(ExtendError::TargetTooShort {
            current,
            target: target_length,
        });
    }
    let r = ((target_length - current) / 2.0).max(0.0);
    let family = HomotopyFamily {
        prefix: path.subpath_segments(0.0, s1),
        middle: path.subpath_segments(s1, s2),
        suffix: path.subpath_segments(s2, path.total_length()),
        anchor1: path.point_at(s1),
        anchor2: path.point_at(s2),
        dir: path.tangent_at(s1),
        base_length: current,
        r_max: r,
    };
    let extended = family.member(r)?;
    Ok((extended, family))
}

// ---------------------------------------------------------------------------
// Planning
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlanOptions {
    /// Fallback beyond the candidate table: when no candidate is free,
    /// splice a zero-net-turn detour (two opposite quarter-arc pairs) into
    /// a straight run of length >= 4 to manufacture parallel tangents.
    /// Off by default; the detour is an engineering device, not part of
    /// the candidate theory.
    pub allow_hairpin: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanBranch {
    /// The shortest candidate already meets the requirement.
    NoExtensionNeeded,
    /// The shortest candidate was free and was extended exactly.
    ExtendedShortest,
    /// A longer free candidate was extended exactly.
    ExtendedAlternate,
    /// A longer free candidate already exceeds the requirement; returned
    /// unextended.
    AlternateSufficient,
    /// Hairpin detour spliced in and extended.
    HairpinExtended,
}

impl fmt::Display for PlanBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlanBranch::NoExtensionNeeded => "no_extension_needed",
            PlanBranch::ExtendedShortest => "extended_shortest",
            PlanBranch::ExtendedAlternate => "extended_alternate",
            PlanBranch::AlternateSufficient => "alternate_sufficient",
            PlanBranch::HairpinExtended => "hairpin_extended",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanEntry {
    pub word: DubinsWord,
    pub length: f64,
    pub verdict_label: String,
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub branch: PlanBranch,
    pub word: Option<DubinsWord>,
    pub path: CurvaturePath,
    pub length: f64,
    /// Length and verdict of every candidate, in candidate order.
    pub table: Vec<PlanEntry>,
}

/// Shortest path meeting a required length. Returns the shortest candidate
/// when it is already long enough; otherwise extends the shortest free
/// candidate exactly to the requirement (or returns it unextended when it
/// is already longer). Fails loudly when every candidate is trapped or
/// unresolved.
pub fn plan_min_length(
    instance: &ProblemInstance,
    required_length: f64,
    options: PlanOptions,
) -> Result<PlanResult, PlanError> {
    let set = candidate_set(instance)?;
    let verdicts: Vec<HomotopyVerdict> = set
        .entries()
        .iter()
        .map(|c| classify_homotopy(instance, &c.path))
        .collect();
    let table: Vec<PlanEntry> = set
        .entries()
        .iter()
        .zip(&verdicts)
        .map(|(c, v)| PlanEntry {
            word: c.word,
            length: c.length,
            verdict_label: v.label(),
        })
        .collect();

    let shortest = set.shortest();
    if shortest.length >= required_length - 1e-12 {
        return Ok(PlanResult {
            branch: PlanBranch::NoExtensionNeeded,
            word: Some(shortest.word),
            path: shortest.path.clone(),
            length: shortest.length,
            table,
        });
    }

    let free_idx = verdicts.iter().position(|v| v.is_free());
    if let Some(idx) = free_idx {
        let cand = &set.entries()[idx];
        if cand.length >= required_length - 1e-12 {
            return Ok(PlanResult {
                branch: PlanBranch::AlternateSufficient,
                word: Some(cand.word),
                path: cand.path.clone(),
                length: cand.length,
                table,
            });
        }
        let (path, _family) = extend_path(&cand.path, required_length)?;
        let length = path.total_length();
        return Ok(PlanResult {
            branch: if idx == 0 {
                PlanBranch::ExtendedShortest
            } else {
                PlanBranch::ExtendedAlternate
            },
            word: Some(cand.word),
            path,
            length,
            table,
        });
    }

    if options.allow_hairpin {
        if let Some(detoured) = hairpin_augment(instance, &shortest.path) {
            let (path, _family) = extend_path(&detoured, required_length)?;
            let length = path.total_length();
            return Ok(PlanResult {
                branch: PlanBranch::HairpinExtended,
                word: Some(shortest.word),
                path,
                length,
                table,
            });
        }
    }

    Err(PlanError::NoFreeCandidate {
        required: required_length,
        shortest: shortest.length,
    })
}

/// Replaces four units of the longest straight segment by an
/// R-L-L-R quarter-arc detour: net displacement four units forward, net
/// turn zero, turning range exactly pi. Fails when no straight run is long
/// enough or the spliced path stops validating.
fn hairpin_augment(instance: &ProblemInstance, path: &CurvaturePath) -> Option<CurvaturePath> {
    const NEED: f64 = 4.2;
    let mut cum = 0.0;
    let mut pick: Option<(f64, f64)> = None; // (start s, length)
    for seg in path.segments() {
        if let PathSegment::Line(l) = seg {
            let len = l.length();
            if len >= NEED && pick.map_or(true, |(_, best)| len > best) {
                pick = Some((cum, len));
            }
        }
        cum += seg.length();
    }
    let (seg_start, seg_len) = pick?;
    let lead = (seg_len - 4.0) / 2.0;
    let split = seg_start + lead;

    let prefix = CurvaturePath::from_segments_unchecked(path.subpath_segments(0.0, split));
    let tail = CurvaturePath::from_segments_unchecked(
        path.subpath_segments(split + 4.0, path.total_length()),
    );
    let start_cfg = prefix.end_config();
    let bump = PathBuilder::new(start_cfg)
        .turn_right(FRAC_PI_2)
        .turn_left(FRAC_PI_2)
        .turn_left(FRAC_PI_2)
        .turn_right(FRAC_PI_2)
        .build()
        .ok()?;
    let joined = concatenate(&prefix, &bump).ok()?;
    let joined = concatenate(&joined, &tail).ok()?;
    if !validate_path(&joined, instance).is_valid() || !self_intersections(&joined).is_empty() {
        return None;
    }
    Some(joined)
}

// ---------------------------------------------------------------------------
// Gradient feasibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub required_planar_length: f64,
    pub feasible: bool,
    /// How much planar length is missing (zero when feasible).
    pub shortfall: f64,
}

/// Uniform-gradient lift: a planar path of length L descending `drop`
/// keeps gradient drop/L, so the constraint holds exactly when
/// L >= drop / max_gradient.
pub fn gradient_feasibility(
    vertical_drop: f64,
    max_gradient: f64,
    planar_length: f64,
) -> Result<FeasibilityReport, GradientError> {
    if !(max_gradient > 0.0) {
        return Err(GradientError::NonPositiveGradient(max_gradient));
    }
    let required_planar_length = vertical_drop.abs() / max_gradient;
    let feasible = planar_length >= required_planar_length;
    Ok(FeasibilityReport {
        required_planar_length,
        feasible,
        shortfall: (required_planar_length - planar_length).max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{normalize_problem, Configuration};
    use crate::path::{path_diameter, validate_path, PathBuilder};
    use std::f64::consts::PI;

    fn cfg(x: f64, y: f64, deg: f64) -> Configuration {
        Configuration::from_angle(Point::new(x, y), deg.to_radians())
    }

    fn inst(y: Configuration) -> ProblemInstance {
        normalize_problem(&cfg(0.0, 0.0, 0.0), &y, 1.0).unwrap()
    }

    fn canonical() -> ProblemInstance {
        inst(cfg(2.0, 0.0, 0.0))
    }

    fn straight2() -> CurvaturePath {
        PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .straight(2.0)
            .build()
            .unwrap()
    }

    #[test]
    fn certificates_fire_in_order() {
        let half_inst = inst(cfg(0.0, 2.0, 180.0));
        let half = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .build()
            .unwrap();
        assert!(matches!(
            free_certificate(&half_inst, &half),
            Some(FreeCertificate::LongArc { segment_index: 0 })
        ));

        assert_eq!(free_certificate(&canonical(), &straight2()), None);

        // Transversal crossing, arcs short enough to avoid earlier rules.
        let hook = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .arc(1.2, 0.9 * PI)
            .straight(1.2)
            .arc(1.2, 0.9 * PI)
            .straight(1.2)
            .build()
            .unwrap();
        let crossing_inst = inst(hook.end_config());
        match free_certificate(&crossing_inst, &hook) {
            Some(FreeCertificate::ParallelTangents { .. }) => {}
            other => panic!("expected parallel tangents first, got {other:?}"),
        }
    }

    #[test]
    fn crossing_paths_certified_by_parallel_tangents() {
        // A transversal self-crossing forces the turning range past pi, so
        // the parallel-tangent rule fires first in the certificate order;
        // the crossing itself still re-verifies through the detector.
        let zig = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .straight(4.0)
            .turn_left(0.9 * PI)
            .straight(2.0)
            .turn_left(0.9 * PI)
            .straight(6.0)
            .build()
            .unwrap();
        let hits = self_intersections(&zig);
        assert_eq!(hits.len(), 1, "hits: {hits:?}");
        let instance = inst(zig.end_config());
        match free_certificate(&instance, &zig) {
            Some(FreeCertificate::ParallelTangents { s1, s2 }) => {
                let t1 = zig.tangent_at(s1);
                let t2 = zig.tangent_at(s2);
                assert!((t1 + t2).norm() <= 1e-9, "tangents not antiparallel");
            }
            other => panic!("expected parallel tangents, got {other:?}"),
        }
    }

    #[test]
    fn classify_canonical_partition() {
        let instance = canonical();
        let verdict = classify_homotopy(&instance, &straight2());
        assert!(verdict.is_trapped());

        let lrl = crate::dubins::solve_word(&instance, DubinsWord::Lrl).unwrap();
        let verdict = classify_homotopy(&instance, &lrl);
        match verdict {
            HomotopyVerdict::Free {
                certificate: FreeCertificate::LongArc { .. },
            } => {}
            other => panic!("expected long-arc freedom, got {other:?}"),
        }
    }

    #[test]
    fn unresolved_for_class_a() {
        let instance = inst(cfg(5.0, 0.0, 0.0));
        let path = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .straight(5.0)
            .build()
            .unwrap();
        match classify_homotopy(&instance, &path) {
            HomotopyVerdict::Unresolved {
                reason: UnresolvedReason::ClassWithoutPartition { class, .. },
            } => assert_eq!(class, ProximityClass::A),
            other => panic!("expected unresolved, got {other:?}"),
        }
    }

    #[test]
    fn extend_pi_arc_exactly() {
        let instance = inst(cfg(0.0, 2.0, 180.0));
        let arc = PathBuilder::new(cfg(0.0, 0.0, 0.0))
            .turn_left(PI)
            .build()
            .unwrap();
        let target = PI + 2.0;
        let (extended, family) = extend_path(&arc, target).unwrap();
        assert!((extended.total_length() - target).abs() <= 1e-9);
        assert!(validate_path(&extended, &instance).is_valid());
        assert!((family.length_at(family.r_max()) - target).abs() <= 1e-12);

        let (same, _) = extend_path(&arc, arc.total_length()).unwrap();
        assert!((same.total_length() - arc.total_length()).abs() <= 1e-12);

        assert!(matches!(
            extend_path(&straight2(), 10.0),
            Err(ExtendError::NoParallelTangents)
        ));
    }

    #[test]
    fn plan_branches() {
        let instance = canonical();
        let plan = plan_min_length(&instance, 1.5, PlanOptions::default()).unwrap();
        assert_eq!(plan.branch, PlanBranch::NoExtensionNeeded);
        assert!((plan.length - 2.0).abs() <= 1e-12);

        let plan = plan_min_length(&instance, 12.0, PlanOptions::default()).unwrap();
        assert_eq!(plan.branch, PlanBranch::ExtendedAlternate);
        assert!((plan.length - 12.0).abs() <= 1e-9);
        assert!(validate_path(&plan.path, &instance).is_valid());
        assert!(plan.table.iter().any(|e| e.verdict_label == "trapped"));

        // Requirement below the free candidate's own length: returned as is.
        let plan = plan_min_length(&instance, 10.0, PlanOptions::default()).unwrap();
        assert_eq!(plan.branch, PlanBranch::AlternateSufficient);
        assert!((plan.length - 10.0 * PI / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn plan_class_a_requires_hairpin() {
        let instance = inst(cfg(5.0, 0.0, 0.0));
        let err = plan_min_length(&instance, 20.0, PlanOptions::default());
        assert!(matches!(err, Err(PlanError::NoFreeCandidate { .. })));

        let plan = plan_min_length(
            &instance,
            20.0,
            PlanOptions {
                allow_hairpin: true,
            },
        )
        .unwrap();
        assert_eq!(plan.branch, PlanBranch::HairpinExtended);
        assert!((plan.length - 20.0).abs() <= 1e-9);
        assert!(validate_path(&plan.path, &instance).is_valid());
    }

    #[test]
    fn trapped_paths_stay_small() {
        let instance = canonical();
        let verdict = classify_homotopy(&instance, &straight2());
        let HomotopyVerdict::TrappedInOmega { region } = verdict else {
            panic!("expected trapped")
        };
        let diam = region.diameter();
        assert!(path_diameter(&straight2()) <= diam.value + 1e-9);
        assert!(diam.value < 4.0);
    }

    #[test]
    fn gradient_feasibility_app() {
        let report = gradient_feasibility(70.0, 1.0 / 7.0, 500.0).unwrap();
        assert!((report.required_planar_length - 490.0).abs() <= 1e-9);
        assert!(report.feasible);
        assert_eq!(report.shortfall, 0.0);

        let report = gradient_feasibility(0.0, 0.3, 12.0).unwrap();
        assert_eq!(report.required_planar_length, 0.0);
        assert!(report.feasible);

        let report = gradient_feasibility(70.0, 1.0 / 7.0, 480.0).unwrap();
        assert!(!report.feasible);
        assert!((report.shortfall - 10.0).abs() <= 1e-9);

        assert!(matches!(
            gradient_feasibility(70.0, 0.0, 500.0),
            Err(GradientError::NonPositiveGradient(_))
        ));
    }

    #[test]
    fn band_certificate_requires_over_arc_point() {
        // Hairpin with inward-tilted legs: endpoints about 1.55 apart, the
        // bulge far above any unit circle through them.
        let over = PathBuilder::new(cfg(0.0, 0.0, 100.0))
            .straight(1.2)
            .turn_right(200.0f64.to_radians())
            .straight(1.2)
            .build()
            .unwrap();
        let d = over
            .segments()
            .first()
            .unwrap()
            .start_point()
            .distance(over.segments().last().unwrap().end_point());
        assert!(d < 2.0, "chord {d}");
        assert!(band_certificate(&over).is_some());

        let flat = straight2();
        assert!(band_certificate(&flat).is_none());
    }
}
