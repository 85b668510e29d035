//! Shared generators and independent oracles for the integration suites.

#![allow(dead_code)]

use bcpath::omega::OmegaRegion;
use bcpath::{
    construct_region, normalize_problem, Configuration, CurvaturePath, PathBuilder, Point,
    ProblemInstance, Similarity, Vec2,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::{PI, TAU};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn config(x: f64, y: f64, deg: f64) -> Configuration {
    Configuration::from_angle(Point::new(x, y), deg.to_radians())
}

pub fn canonical_instance(y: Configuration) -> ProblemInstance {
    normalize_problem(&config(0.0, 0.0, 0.0), &y, 1.0).expect("valid instance")
}

pub fn random_config(rng: &mut ChaCha8Rng) -> Configuration {
    Configuration::from_angle(
        Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
        rng.gen_range(-PI..PI),
    )
}

/// Goal somewhere ahead of the canonical start, wide enough to hit every
/// proximity class.
pub fn random_goal(rng: &mut ChaCha8Rng) -> Configuration {
    Configuration::from_angle(
        Point::new(rng.gen_range(0.1..4.5), rng.gen_range(-2.5..2.5)),
        rng.gen_range(-PI..PI),
    )
}

/// Rejection-samples a goal whose instance encloses a trapping region.
pub fn random_omega_instance(rng: &mut ChaCha8Rng) -> (ProblemInstance, OmegaRegion) {
    loop {
        let instance = canonical_instance(random_goal(rng));
        if let Some(region) = construct_region(&instance) {
            return (instance, region);
        }
    }
}

pub fn random_rigid_motion(rng: &mut ChaCha8Rng) -> Similarity {
    Similarity::rigid(
        rng.gen_range(-PI..PI),
        Vec2::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0)),
    )
}

/// Random valid curvature path: a short chain of arcs and straights.
pub fn random_path(rng: &mut ChaCha8Rng, start: Configuration) -> CurvaturePath {
    let mut builder = PathBuilder::new(start);
    let n = rng.gen_range(1..=5);
    for _ in 0..n {
        if rng.gen_bool(0.5) {
            builder = builder.straight(rng.gen_range(0.2..2.0));
        } else {
            let radius = rng.gen_range(1.0..2.5);
            let sweep = rng.gen_range(0.1..1.4) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            builder = builder.arc(radius, sweep);
        }
    }
    builder.build().expect("builder output is C1")
}

/// Dense pairwise sampling oracle for path diameter.
pub fn sampled_path_diameter(path: &CurvaturePath, step: f64) -> f64 {
    let n = ((path.total_length() / step).ceil() as usize).max(2);
    let pts: Vec<Point> = (0..=n)
        .map(|k| path.point_at(path.total_length() * k as f64 / n as f64))
        .collect();
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(pts[i].distance(pts[j]));
        }
    }
    best
}

/// Discretized uniform-gradient lift: lifts a planar path of length `l`
/// over `steps` segments at constant slope and reports whether the
/// gradient constraint holds the whole way down.
pub fn lift_is_feasible(drop: f64, max_gradient: f64, l: f64, steps: usize) -> bool {
    if l <= 0.0 {
        return drop.abs() == 0.0;
    }
    let slope = drop.abs() / l;
    let ds = l / steps as f64;
    let mut z = 0.0;
    for _ in 0..steps {
        z -= slope * ds;
    }
    let descended = (-z - drop.abs()).abs() <= 1e-9 * drop.abs().max(1.0);
    descended && slope <= max_gradient + 1e-12
}

/// Minimal feasible planar length by bisection over the lift oracle.
pub fn lift_required_length(drop: f64, max_gradient: f64, steps: usize) -> f64 {
    let mut lo = 1e-9;
    let mut hi = 1e9;
    if lift_is_feasible(drop, max_gradient, lo, steps) {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lift_is_feasible(drop, max_gradient, mid, steps) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Uniformly random boundary parameter pairs for probing.
pub fn random_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

pub fn tau() -> f64 {
    TAU
}
