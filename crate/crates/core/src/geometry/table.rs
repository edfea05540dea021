//! Per-degree distances that track the containment chain
//! `target ⊆ liminf J_n ⊆ limsup K_n ⊆ hull`.

use super::hull::{hull_violation, ConvexPolygon};
use super::{hausdorff, raster_to_points, semi_hausdorff, PointSet, SetKind};
use crate::dynamics::JuliaApproximation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// `h(target, J_n)`: small when the target lies near `J_n`.
    pub d_semi_j: f64,
    /// `max dist(K_n, hull)`: small when `K_n` stays inside the hull.
    pub d_semi_k_hull: f64,
    /// Full Hausdorff distance to a known limit set, when one is given.
    pub d_h_target: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

/// A known limit set and the mask of each raster it is compared against.
#[derive(Clone, Debug)]
pub struct LimitTarget {
    pub set: PointSet,
    pub against: SetKind,
}

impl ConvergenceTable {
    pub fn column_j(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.d_semi_j).collect()
    }

    pub fn column_k_hull(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.d_semi_k_hull).collect()
    }

    pub fn column_target(&self) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r.d_h_target).collect()
    }
}

/// Counts the steps `k` where `values[k + 1] > values[k] * (1 + slack)`.
pub fn increases(values: &[f64], slack: f64) -> usize {
    values.windows(2).filter(|w| w[1] > w[0] * (1.0 + slack)).count()
}

/// One row per `(n, raster)` pair; the `n` must strictly increase.
pub fn convergence_table(
    target_j: &PointSet,
    hull: &ConvexPolygon,
    approximations: &[(usize, JuliaApproximation)],
    limit: Option<&LimitTarget>,
) -> Result<ConvergenceTable> {
    if approximations.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::invalid("degrees of a convergence table must strictly increase"));
    }
    let rows = approximations
        .iter()
        .map(|(n, approx)| {
            let j = raster_to_points(approx, SetKind::J)?;
            let k = raster_to_points(approx, SetKind::K)?;
            let d_h_target = limit.map(|t| match t.against {
                SetKind::J => hausdorff(&j, &t.set),
                SetKind::K => hausdorff(&k, &t.set),
            });
            Ok(ConvergenceRow {
                n: *n,
                d_semi_j: semi_hausdorff(target_j, &j),
                d_semi_k_hull: hull_violation(&k, hull),
                d_h_target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { rows })
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::dynamics::{filled_julia_raster, GridSpec};
    use crate::geometry::convex_hull;
    use crate::polynomial::Polynomial;

    #[test]
    fn repeated_raster_gives_constant_columns() {
        let grid = GridSpec::square(Complex64::new(0.0, 0.0), 1.5, 128).unwrap();
        let r = filled_julia_raster(&Polynomial::monomial(2), grid, 32).unwrap();
        let circle = PointSet::circle(Complex64::new(0.0, 0.0), 1.0, 512).unwrap();
        let hull = convex_hull(&circle).unwrap();
        let limit = LimitTarget { set: circle.clone(), against: SetKind::J };
        let approx = vec![(1, r.clone()), (2, r.clone()), (3, r)];
        let table = convergence_table(&circle, &hull, &approx, Some(&limit)).unwrap();
        assert_eq!(table.rows.len(), 3);
        for col in [table.column_j(), table.column_k_hull()] {
            assert!(col.windows(2).all(|w| w[0] == w[1]));
        }
        assert!(table.column_target().iter().all(|v| v.is_some()));
    }

    #[test]
    fn rejects_unsorted_degrees() {
        let grid = GridSpec::square(Complex64::new(0.0, 0.0), 1.5, 16).unwrap();
        let r = filled_julia_raster(&Polynomial::monomial(2), grid, 16).unwrap();
        let circle = PointSet::circle(Complex64::new(0.0, 0.0), 1.0, 64).unwrap();
        let hull = convex_hull(&circle).unwrap();
        assert!(convergence_table(&circle, &hull, &[(2, r.clone()), (2, r)], None).is_err());
    }

    #[test]
    fn counting_increases() {
        assert_eq!(increases(&[4.0, 3.0, 3.2, 1.0], 0.1), 0);
        assert_eq!(increases(&[4.0, 3.0, 3.5, 1.0], 0.1), 1);
    }
}
