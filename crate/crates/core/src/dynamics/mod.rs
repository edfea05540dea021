//! Polynomial dynamics: iteration, escape-time rasters, critical orbits,
//! connectedness loci and dynamical Green's functions.

pub mod grid;
pub mod locus;
pub mod raster;
pub mod roots;

use num_complex::Complex64;
use rayon::prelude::*;

pub use grid::{BitMask, GridSpec};
pub use locus::{locus_scan, LocusFamily, LocusScan};
pub use raster::{filled_julia_raster, filled_julia_raster_with, JuliaApproximation, RasterMode};

use crate::error::{Error, Result};
use crate::measure::AffineMap;
use crate::polynomial::Polynomial;

/// Magnitude returned by [`evaluate`] once a value overflows.
pub const ESCAPED: f64 = 1e150;

/// Orbit magnitude past which [`green_gap`] switches to the asymptotic tail.
pub const GREEN_CUTOFF: f64 = 1e8;

pub const MIN_CONNECTEDNESS_ITER: usize = 64;
pub const MIN_GREEN_DEPTH: usize = 8;
/// Coefficient-count guard for [`iterate_polynomial`].
pub const MAX_ITERATE_COEFFS: usize = 1025;

/// Horner evaluation that saturates to [`ESCAPED`] instead of producing
/// infinities or NaNs.
#[inline]
pub fn evaluate(p: &Polynomial, z: Complex64) -> Complex64 {
    let v = p.eval(z);
    if v.is_finite() && v.norm() <= ESCAPED {
        v
    } else {
        Complex64::new(ESCAPED, 0.0)
    }
}

/// `R = max(1, (2 + Σ_{i<d} |c_i|) / |c_d|)`; every `|z| >= R` satisfies
/// `|p(z)| >= 2|z|`, so orbits leaving the disk of radius `R` escape.
pub fn escape_radius(p: &Polynomial) -> Result<f64> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::invalid(format!("escape radius needs degree >= 2, got {d}")));
    }
    let c = p.coeffs();
    let lower: f64 = c[..d].iter().map(|c| c.norm()).sum();
    Ok(((2.0 + lower) / c[d].norm()).max(1.0))
}

/// Roots of `p'` with multiplicity. For real `p`, roots within rounding of
/// the real axis are returned exactly real, so their orbits stay real.
pub fn critical_points(p: &Polynomial) -> Result<Vec<Complex64>> {
    if p.degree() < 2 {
        return Err(Error::invalid("critical points need degree >= 2"));
    }
    let dp = p.derivative().expect("degree >= 2");
    let mut points = roots::polynomial_roots(&dp)?;
    let bound = 1e-9 * dp.max_coeff_norm();
    if p.coeffs().iter().all(|c| c.im == 0.0) {
        for z in points.iter_mut() {
            let real = Complex64::new(z.re, 0.0);
            if z.im.abs() <= 1e-7 * z.norm().max(1.0) && dp.eval(real).norm() <= bound {
                *z = real;
            }
        }
    }
    for (k, z) in points.iter().enumerate() {
        if !(dp.eval(*z).norm() <= bound) {
            return Err(Error::NumericFailure {
                context: format!("critical point {k} residual above tolerance"),
                iteration: roots::MAX_ITERATIONS,
            });
        }
    }
    Ok(points)
}

/// Whether every critical orbit stays within the escape radius for
/// `max_iter` steps. A `false` verdict is certain; `true` is relative to
/// the iteration budget.
///
/// An orbit that escapes only after landing, within its accumulated
/// rounding error, on a point of period 1 or 2 counts as bounded: critical
/// values sitting exactly on a repelling cycle (`±2` for Chebyshev maps)
/// cannot be followed in floating point.
pub fn is_connected(p: &Polynomial, max_iter: usize) -> Result<bool> {
    if max_iter < MIN_CONNECTEDNESS_ITER {
        return Err(Error::invalid(format!("max_iter must be >= {MIN_CONNECTEDNESS_ITER}")));
    }
    let crit = critical_points(p)?;
    Ok(critical_orbits_bounded(p, &crit, escape_radius(p)?, max_iter))
}

/// The orbit test behind [`is_connected`], for precomputed critical points.
pub(crate) fn critical_orbits_bounded(p: &Polynomial, crit: &[Complex64], radius: f64, max_iter: usize) -> bool {
    crit.iter().all(|&c| orbits_bounded(p, &[c], radius, max_iter) || lands_on_cycle(p, c, radius, max_iter))
}

/// True iff no orbit started at `starts` leaves the closed disk of radius
/// `radius` within `max_iter` steps.
pub fn orbits_bounded(p: &Polynomial, starts: &[Complex64], radius: f64, max_iter: usize) -> bool {
    let r2 = radius * radius;
    starts.iter().all(|&z0| {
        let mut z = z0;
        if z.norm_sqr() > r2 {
            return false;
        }
        for _ in 0..max_iter {
            z = p.eval(z);
            if !(z.norm_sqr() <= r2) {
                return false;
            }
        }
        true
    })
}

/// `Σ |c_i| r^i`, the scale of the rounding error of Horner at `|z| = r`.
fn horner_scale(p: &Polynomial, r: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Follows the orbit of `z0` with a first-order forward error bound and
/// reports whether some orbit point is within that bound of a periodic
/// point of period 1 or 2.
fn lands_on_cycle(p: &Polynomial, z0: Complex64, radius: f64, max_iter: usize) -> bool {
    const SAFETY: f64 = 16.0;
    let mut z = z0;
    let mut err = 0.0;
    for _ in 0..max_iter {
        let (v, dv) = p.eval_with_derivative(z);
        err = dv.norm() * err + f64::EPSILON * horner_scale(p, z.norm());
        z = v;
        if !(z.norm() <= radius) || err > 1e-3 * z.norm().max(1.0) {
            return false;
        }
        for period in 1..=2 {
            if let Some(q) = periodic_point_near(p, z, period) {
                if (q - z).norm() <= SAFETY * err {
                    return true;
                }
            }
        }
    }
    false
}

/// Newton's method on `p^m(z) - z` from `z`.
fn periodic_point_near(p: &Polynomial, z: Complex64, period: usize) -> Option<Complex64> {
    let mut w = z;
    for _ in 0..32 {
        let (mut v, mut dv) = (w, Complex64::new(1.0, 0.0));
        for _ in 0..period {
            let (pv, pd) = p.eval_with_derivative(v);
            dv *= pd;
            v = pv;
        }
        let denom = dv - 1.0;
        if denom.norm() == 0.0 || !v.is_finite() || !dv.is_finite() {
            return None;
        }
        let step = (v - w) / denom;
        w -= step;
        if !w.is_finite() {
            return None;
        }
        if step.norm() <= 4.0 * f64::EPSILON * w.norm().max(1.0) {
            let residual = (0..period).fold(w, |v, _| p.eval(v)) - w;
            return (residual.norm() <= 1e-8 * w.norm().max(1.0)).then_some(w);
        }
    }
    None
}

/// `(φ⁻¹∘q, q∘φ⁻¹)`. The two are conjugate: `q∘φ⁻¹ = φ∘(φ⁻¹∘q)∘φ⁻¹`.
pub fn conjugate_pair(q: &Polynomial, phi: &AffineMap) -> Result<(Polynomial, Polynomial)> {
    let inv = phi.inverse();
    let left = q.affine_image(inv.scale(), inv.translation_part())?;
    let right = q.compose_affine(inv.scale(), inv.translation_part())?;
    Ok((left, right))
}

/// The `k`-fold composition `f∘f∘…∘f`.
pub fn iterate_polynomial(f: &Polynomial, k: usize) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::invalid("iterate count must be >= 1"));
    }
    let d = f.degree();
    let within_guard = u32::try_from(k).ok().and_then(|k| d.checked_pow(k)).is_some_and(|n| n < MAX_ITERATE_COEFFS);
    if !within_guard {
        return Err(Error::invalid(format!("degree {d}^{k} exceeds the {MAX_ITERATE_COEFFS}-coefficient limit")));
    }
    let mut out = f.clone();
    for _ in 1..k {
        out = f.compose(&out);
    }
    Ok(out)
}

/// Dynamical Green's function `lim d^{-k} log⁺|q^k(z)|`.
///
/// The orbit is followed for at most `depth` steps; once it passes
/// [`GREEN_CUTOFF`] the remainder is closed with the asymptotic expansion
/// `g(w) = log|w| + log|c_d| / (d-1) + o(1)`.
pub fn dynamical_green(q: &Polynomial, z: Complex64, depth: usize) -> f64 {
    let d = q.degree() as f64;
    let tail = q.leading().norm().ln() / (d - 1.0);
    let mut w = z;
    let mut scale = 1.0;
    for _ in 0..depth {
        let r = w.norm();
        if r > GREEN_CUTOFF {
            return scale * (r.ln() + tail);
        }
        let next = q.eval(w);
        if !next.is_finite() {
            return scale * (r.ln() + tail);
        }
        w = next;
        scale /= d;
    }
    let r = w.norm();
    if r > GREEN_CUTOFF {
        scale * (r.ln() + tail)
    } else {
        scale * r.ln().max(0.0)
    }
}

/// `sup |g_q(z) - (1/n) log⁺|q(z)||` over the cell centers of `grid`.
pub fn green_gap(q: &Polynomial, n: usize, grid: &GridSpec, depth: usize) -> Result<f64> {
    if n < 2 || q.degree() != n {
        return Err(Error::invalid(format!("green gap needs deg q = n >= 2 (deg q = {}, n = {n})", q.degree())));
    }
    if depth < MIN_GREEN_DEPTH {
        return Err(Error::invalid(format!("depth must be >= {MIN_GREEN_DEPTH}")));
    }
    let inv_n = 1.0 / n as f64;
    let gap = (0..grid.ny)
        .into_par_iter()
        .map(|j| {
            (0..grid.nx)
                .map(|i| {
                    let z = grid.cell_center(i, j);
                    let g = dynamical_green(q, z, depth);
                    let h = inv_n * q.eval(z).norm().ln().max(0.0);
                    (g - h).abs()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(gap)
}
