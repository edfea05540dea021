//! Set-level diagnostics: Hausdorff distances, convex hulls, capacity
//! estimates and convergence tables.

pub mod capacity;
pub mod hausdorff;
pub mod hull;
pub mod table;

use num_complex::Complex64;

pub use capacity::leja_capacity;
pub use hausdorff::{hausdorff, semi_hausdorff};
pub use hull::{convex_hull, hull_violation, ConvexPolygon};
pub use table::{convergence_table, ConvergenceRow, ConvergenceTable, LimitTarget};

use crate::dynamics::JuliaApproximation;
use crate::error::{Error, Result};

/// A finite, non-empty sample of a compact set.
#[derive(Clone, Debug)]
pub struct PointSet {
    points: Vec<Complex64>,
    /// Sampling resolution, when the points come from a raster.
    spacing: Option<f64>,
}

impl PointSet {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet("point set has no points".into()));
        }
        if points.iter().any(|z| !z.is_finite()) {
            return Err(Error::invalid("point set contains non-finite points"));
        }
        Ok(Self { points, spacing: None })
    }

    pub fn with_spacing(mut self, spacing: f64) -> Self {
        self.spacing = Some(spacing);
        self
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Image under `z -> f(z)`; the spacing hint is dropped.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> PointSet {
        PointSet { points: self.points.iter().map(|&z| f(z)).collect(), spacing: None }
    }

    /// `(min corner, max corner)` of the bounding box.
    pub fn bounds(&self) -> (Complex64, Complex64) {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for z in &self.points {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        (lo, hi)
    }

    /// `count` equally spaced samples of the circle `|z - center| = radius`.
    pub fn circle(center: Complex64, radius: f64, count: usize) -> Result<Self> {
        let pts = (0..count)
            .map(|k| center + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / count as f64))
            .collect();
        Self::new(pts)
    }

    /// `count` equally spaced samples of the segment `[a, b]`, endpoints included.
    pub fn segment(a: Complex64, b: Complex64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid("segment sampling needs at least two points"));
        }
        let pts = (0..count).map(|k| a + (b - a) * (k as f64 / (count - 1) as f64)).collect();
        Self::new(pts)
    }
}

/// Which mask of a raster to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    K,
    J,
}

/// Cell centers of the selected mask.
pub fn raster_to_points(r: &JuliaApproximation, which: SetKind) -> Result<PointSet> {
    let mask = match which {
        SetKind::K => &r.k_mask,
        SetKind::J => &r.j_mask,
    };
    let points: Vec<Complex64> = mask.set_cells().map(|(i, j)| r.grid.cell_center(i, j)).collect();
    if points.is_empty() {
        return Err(Error::EmptySet(format!("{which:?} mask of {} is empty", r.poly)));
    }
    Ok(PointSet { points, spacing: Some(r.grid.cell_diagonal()) })
}
