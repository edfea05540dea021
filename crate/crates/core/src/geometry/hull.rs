use num_complex::Complex64;
use rayon::prelude::*;

use super::PointSet;
use crate::error::{Error, Result};

/// Convex polygon with counterclockwise vertices; two vertices describe a
/// segment.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Complex64>,
}

#[inline]
fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Fan test from the first vertex, `O(log n)`.
    fn contains(&self, p: Complex64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if n < 3 {
            return false;
        }
        if cross(v[0], v[1], p) < 0.0 || cross(v[0], v[n - 1], p) > 0.0 {
            return false;
        }
        let (mut lo, mut hi) = (1, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cross(v[0], v[mid], p) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cross(v[lo], v[lo + 1], p) >= 0.0
    }

    /// Euclidean distance from `p` to the polygon, zero inside.
    pub fn distance(&self, p: Complex64) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|k| segment_distance(p, v[k], v[(k + 1) % n])).fold(f64::INFINITY, f64::min)
    }
}

/// Andrew's monotone chain. Collinear input collapses to its two extreme
/// points.
pub fn convex_hull(set: &PointSet) -> Result<ConvexPolygon> {
    let mut pts = set.points().to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 2 {
        return Err(Error::invalid("convex hull needs at least two distinct points"));
    }
    let mut lower: Vec<Complex64> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // collinear: keep the two extremes
        return Ok(ConvexPolygon { vertices: vec![pts[0], pts[pts.len() - 1]] });
    }
    Ok(ConvexPolygon { vertices: lower })
}

/// `max_{p ∈ P} dist(p, H)`.
pub fn hull_violation(set: &PointSet, hull: &ConvexPolygon) -> f64 {
    set.points().par_iter().map(|&p| hull.distance(p)).reduce(|| 0.0, f64::max)
}
