//! Analysis of planar bounded-curvature paths between oriented endpoints.
//!
//! Given two oriented points and a curvature bound, this crate solves the
//! six Dubins words, classifies the endpoint configuration by the distances
//! between its adjacent turning circles (classes A-D), constructs the
//! compact trapping region bounded by six unit-circle arcs when it exists,
//! decides whether a path is trapped inside that region or certifiably
//! free, and extends free paths to an exact target length by the
//! parallel-tangent translation homotopy. A gradient feasibility check
//! covers the decline-design application where planar path length must
//! reach a lower bound set by vertical displacement.
//!
//! Everything operates in a canonical frame (start at the origin heading
//! +x, curvature bound 1); [`geom::normalize_problem`] maps raw input into
//! that frame and retains the inverse transform.

pub mod dubins;
pub mod geom;
pub mod homotopy;
mod hull;
pub mod intersect;
pub mod omega;
pub mod path;
pub mod proximity;

pub use dubins::{candidate_set, shortest_path, Candidate, CandidateSet, DubinsError, DubinsWord};
pub use geom::{
    adjacent_circles, mutual_tangent_circle, normalize_problem, Circle, Configuration, GeomError,
    Orientation, Point, ProblemInstance, Side, Similarity, Vec2,
};
pub use homotopy::{
    classify_homotopy, extend_path, free_certificate, gradient_feasibility, plan_min_length,
    ExtendError, FeasibilityReport, FreeCertificate, HomotopyFamily, HomotopyVerdict, PlanBranch,
    PlanError, PlanOptions, PlanResult,
};
pub use omega::{
    construct_region, ContactKind, DiameterReport, OmegaRegion, RegionLocation, RelationReport,
    Subregion,
};
pub use path::{
    concatenate, contains_long_arc, find_parallel_tangents, path_diameter, self_intersections,
    turning_profile, validate_path, ArcSeg, CurvaturePath, LineSeg, PathBuilder, PathError,
    PathSegment, TurningProfile, ValidationReport, Violation,
};
pub use proximity::{
    classify_endpoints, raw_proximity, DSubcase, ProximityClass, ProximityReport, RawCondition,
};
