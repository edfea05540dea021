//! Escape-time rasters of filled Julia sets.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{BitMask, GridSpec};
use super::{escape_radius, GREEN_CUTOFF};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

pub const MIN_RASTER_ITER: usize = 16;
/// Extra steps an escaped orbit may take to reach the Green's function cutoff.
const COVERING_EXTRA_STEPS: usize = 64;

/// How cells are assigned to `K`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RasterMode {
    /// A cell is in `K` iff its center does not escape.
    #[default]
    CellCenter,
    /// Also marks escaping cells whose center has `K` within one cell
    /// diagonal by the Green's function bound `dist(z, K) <= 2 sinh g / |∇g|`.
    /// Sets with empty interior (segments, dust) stay visible.
    Covering,
}

impl std::fmt::Display for RasterMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RasterMode::CellCenter => "center",
            RasterMode::Covering => "covering",
        })
    }
}

/// Cell-level approximation of `K_q` and `J_q = ∂K_q`.
#[derive(Clone, Debug)]
pub struct JuliaApproximation {
    pub grid: GridSpec,
    /// Cells whose center did not escape within `max_iter` steps.
    pub k_mask: BitMask,
    /// `K` cells with an escaped 4-neighbor, plus `K` cells on the grid border.
    pub j_mask: BitMask,
    pub escape_radius: f64,
    pub max_iter: usize,
    pub poly: Polynomial,
    pub mode: RasterMode,
}

/// Number of steps until `|z| > radius`, or `None` if the orbit stays
/// within the radius for `max_iter` steps.
#[inline]
pub fn escape_time(p: &Polynomial, z0: Complex64, radius: f64, max_iter: usize) -> Option<usize> {
    let r2 = radius * radius;
    let mut z = z0;
    if z.norm_sqr() > r2 {
        return Some(0);
    }
    for k in 1..=max_iter {
        z = p.eval(z);
        if !(z.norm_sqr() <= r2) {
            return Some(k);
        }
    }
    None
}

/// Upper bound on `ln dist(z0, K)` for an escaping `z0`, from the Green's
/// function and its gradient along the orbit. `None` if `z0` stays bounded.
fn log_distance_bound(p: &Polynomial, z0: Complex64, radius: f64, max_iter: usize) -> Option<f64> {
    let ln_d = (p.degree() as f64).ln();
    let tail = p.leading().norm().ln() / (p.degree() as f64 - 1.0);
    let mut z = z0;
    let mut ln_dz = 0.0;
    let mut k = 0usize;
    let mut escaped_at = None;
    while z.norm() <= GREEN_CUTOFF.max(radius) {
        match escaped_at {
            None if z.norm() > radius => escaped_at = Some(k),
            None if k == max_iter => return None,
            Some(e) if k >= e + COVERING_EXTRA_STEPS => break,
            _ => {}
        }
        let (v, dv) = p.eval_with_derivative(z);
        if !v.is_finite() {
            break;
        }
        ln_dz += dv.norm().ln();
        z = v;
        k += 1;
    }
    let scale = -(k as f64) * ln_d;
    let g = (z.norm().ln() + tail) * scale.exp();
    if !(g > 0.0) {
        return Some(f64::NEG_INFINITY);
    }
    let ln_sinh = if g < 1e-4 {
        g.ln()
    } else if g > 20.0 {
        g - std::f64::consts::LN_2
    } else {
        g.sinh().ln()
    };
    let ln_grad = ln_dz - z.norm().ln() + scale;
    Some(std::f64::consts::LN_2 + ln_sinh - ln_grad)
}

pub fn filled_julia_raster(p: &Polynomial, grid: GridSpec, max_iter: usize) -> Result<JuliaApproximation> {
    filled_julia_raster_with(p, grid, max_iter, RasterMode::CellCenter)
}

pub fn filled_julia_raster_with(
    p: &Polynomial,
    grid: GridSpec,
    max_iter: usize,
    mode: RasterMode,
) -> Result<JuliaApproximation> {
    if max_iter < MIN_RASTER_ITER {
        return Err(Error::invalid(format!("max_iter must be >= {MIN_RASTER_ITER}")));
    }
    let radius = escape_radius(p)?;
    let ln_reach = grid.cell_diagonal().ln();
    let member = move |z: Complex64| match mode {
        RasterMode::CellCenter => escape_time(p, z, radius, max_iter).is_none(),
        RasterMode::Covering => log_distance_bound(p, z, radius, max_iter).is_none_or(|ln| ln <= ln_reach),
    };
    let bits: Vec<bool> = (0..grid.ny)
        .into_par_iter()
        .flat_map_iter(|j| (0..grid.nx).map(move |i| member(grid.cell_center(i, j))))
        .collect();
    let k_mask = BitMask::new(grid.nx, grid.ny, bits);
    let j_mask = inner_boundary(&k_mask);
    Ok(JuliaApproximation { grid, k_mask, j_mask, escape_radius: radius, max_iter, poly: p.clone(), mode })
}

/// Set cells that touch an unset 4-neighbor or the border of the raster.
pub fn inner_boundary(mask: &BitMask) -> BitMask {
    let (nx, ny) = (mask.nx(), mask.ny());
    let mut out = BitMask::empty(nx, ny);
    for (i, j) in mask.set_cells() {
        let on_border = i == 0 || j == 0 || i + 1 == nx || j + 1 == ny;
        let exposed =
            on_border || !mask.get(i - 1, j) || !mask.get(i + 1, j) || !mask.get(i, j - 1) || !mask.get(i, j + 1);
        if exposed {
            out.set(i, j, true);
        }
    }
    out
}

impl JuliaApproximation {
    pub fn is_k_empty(&self) -> bool {
        self.k_mask.is_clear()
    }

    /// Counts of `(K cells, J cells)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.k_mask.count(), self.j_mask.count())
    }
}
