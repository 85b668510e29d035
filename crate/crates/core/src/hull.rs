//! Convex hull and rotating-calipers diameter over tagged sample points.
//! Used by the region diameter, where boundary samples carry their source
//! arc and local parameter for later refinement.

use crate::geom::Point;

#[derive(Debug, Clone, Copy)]
pub struct Sample<T: Copy> {
    pub point: Point,
    pub tag: T,
}

/// Andrew's monotone chain. Returns hull vertices in counterclockwise order.
pub fn convex_hull<T: Copy>(mut pts: Vec<Sample<T>>) -> Vec<Sample<T>> {
    pts.sort_by(|a, b| {
        (a.point.x, a.point.y)
            .partial_cmp(&(b.point.x, b.point.y))
            .expect("finite coordinates")
    });
    pts.dedup_by(|a, b| a.point.distance(b.point) <= 1e-12);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a - o).cross(b - o);
    let mut hull: Vec<Sample<T>> = Vec::with_capacity(2 * n);
    for &p in &pts {
        while hull.len() >= 2
            && cross(hull[hull.len() - 2].point, hull[hull.len() - 1].point, p.point) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2].point, hull[hull.len() - 1].point, p.point) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Farthest pair over the hull by antipodal rotation.
pub fn hull_diameter<T: Copy>(hull: &[Sample<T>]) -> (f64, Sample<T>, Sample<T>) {
    assert!(!hull.is_empty());
    if hull.len() == 1 {
        return (0.0, hull[0], hull[0]);
    }
    if hull.len() == 2 {
        return (hull[0].point.distance(hull[1].point), hull[0], hull[1]);
    }
    let n = hull.len();
    let area2 = |a: Point, b: Point, c: Point| ((b - a).cross(c - a)).abs();
    let mut best = (0.0f64, hull[0], hull[0]);
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        while area2(hull[i].point, hull[ni].point, hull[(j + 1) % n].point)
            > area2(hull[i].point, hull[ni].point, hull[j].point)
        {
            j = (j + 1) % n;
        }
        for &cand in &[(i, j), (ni, j)] {
            let d = hull[cand.0].point.distance(hull[cand.1].point);
            if d > best.0 {
                best = (d, hull[cand.0], hull[cand.1]);
            }
        }
    }
    best
}

/// Maximizes `f` over `[lo, hi]` by golden-section search; returns (arg, value).
pub fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..80 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}
