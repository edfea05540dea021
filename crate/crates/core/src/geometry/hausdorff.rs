//! Exact Hausdorff distances between finite point sets.
//!
//! The target set is bucketed on a uniform grid; nearest-neighbor queries
//! visit square rings of buckets outward and stop once the next ring cannot
//! hold anything closer. The index only prunes, so results are exact.

use num_complex::Complex64;
use rayon::prelude::*;

use super::PointSet;

/// Buckets per axis when no raster spacing is known.
const BUCKETS_PER_DIAMETER: f64 = 256.0;

struct BucketIndex<'a> {
    origin: Complex64,
    cell: f64,
    nx: i64,
    ny: i64,
    /// Bucket `b` owns `items[start[b]..start[b + 1]]`.
    start: Vec<usize>,
    items: Vec<&'a Complex64>,
}

impl<'a> BucketIndex<'a> {
    fn build(set: &'a PointSet, cell_hint: Option<f64>) -> Self {
        let (lo, hi) = set.bounds();
        let diameter = (hi - lo).norm();
        let mut cell = diameter / BUCKETS_PER_DIAMETER;
        if let Some(h) = cell_hint {
            cell = cell.max(h);
        }
        if !(cell > 0.0) {
            cell = 1.0;
        }
        let nx = ((hi.re - lo.re) / cell).floor() as i64 + 1;
        let ny = ((hi.im - lo.im) / cell).floor() as i64 + 1;

        let bucket_of = |z: &Complex64| {
            let i = (((z.re - lo.re) / cell).floor() as i64).clamp(0, nx - 1);
            let j = (((z.im - lo.im) / cell).floor() as i64).clamp(0, ny - 1);
            (j * nx + i) as usize
        };
        let mut start = vec![0usize; (nx * ny) as usize + 1];
        for z in set.points() {
            start[bucket_of(z) + 1] += 1;
        }
        for b in 1..start.len() {
            start[b] += start[b - 1];
        }
        let mut fill = start.clone();
        let mut items = vec![&set.points()[0]; set.len()];
        for z in set.points() {
            let b = bucket_of(z);
            items[fill[b]] = z;
            fill[b] += 1;
        }
        Self { origin: lo, cell, nx, ny, start, items }
    }

    fn scan_bucket(&self, i: i64, j: i64, q: Complex64, best2: &mut f64) {
        let b = (j * self.nx + i) as usize;
        for z in &self.items[self.start[b]..self.start[b + 1]] {
            let d2 = (**z - q).norm_sqr();
            if d2 < *best2 {
                *best2 = d2;
            }
        }
    }

    fn nearest_distance(&self, q: Complex64) -> f64 {
        let ci = ((q.re - self.origin.re) / self.cell).floor() as i64;
        let cj = ((q.im - self.origin.im) / self.cell).floor() as i64;
        let outside = |c: i64, n: i64| {
            if c < 0 {
                -c
            } else if c >= n {
                c - n + 1
            } else {
                0
            }
        };
        let first_ring = outside(ci, self.nx).max(outside(cj, self.ny));
        let last_ring = [ci, self.nx - 1 - ci, cj, self.ny - 1 - cj].into_iter().map(i64::abs).max().unwrap_or(0);

        let mut best2 = f64::INFINITY;
        let mut r = first_ring;
        loop {
            let (i_lo, i_hi) = ((ci - r).max(0), (ci + r).min(self.nx - 1));
            for j in [cj - r, cj + r] {
                if (0..self.ny).contains(&j) {
                    for i in i_lo..=i_hi {
                        self.scan_bucket(i, j, q, &mut best2);
                    }
                    if r == 0 {
                        break;
                    }
                }
            }
            if r > 0 {
                let (j_lo, j_hi) = ((cj - r + 1).max(0), (cj + r - 1).min(self.ny - 1));
                for i in [ci - r, ci + r] {
                    if (0..self.nx).contains(&i) {
                        for j in j_lo..=j_hi {
                            self.scan_bucket(i, j, q, &mut best2);
                        }
                    }
                }
            }
            // anything in ring r + 1 or beyond is at least r cells away
            if best2 <= (r as f64 * self.cell).powi(2) || r >= last_ring {
                break;
            }
            r += 1;
        }
        best2.sqrt()
    }
}

/// `sup_{a ∈ A} inf_{b ∈ B} |a - b|`.
pub fn semi_hausdorff(a: &PointSet, b: &PointSet) -> f64 {
    let hint = match (a.spacing(), b.spacing()) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let index = BucketIndex::build(b, hint);
    a.points().par_iter().map(|&q| index.nearest_distance(q)).reduce(|| 0.0, f64::max)
}

/// `max(h(A, B), h(B, A))`.
pub fn hausdorff(a: &PointSet, b: &PointSet) -> f64 {
    semi_hausdorff(a, b).max(semi_hausdorff(b, a))
}
