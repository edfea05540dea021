//! Simultaneous polynomial root finding.
//!
//! Degrees one and two are solved in closed form (the quadratic uses the
//! cancellation-free variant of the formula). Higher degrees use the
//! Aberth-Ehrlich iteration started from points on a circle whose radius is
//! the Fujiwara-type bound `max |c_k / c_d|^(1/(d-k))`. A root is frozen once
//! its residual falls to the rounding level of Horner's rule at that point,
//! and every root gets a few Newton polishing steps at the end.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

pub const MAX_ITERATIONS: usize = 500;
const ATTEMPTS: usize = 3;
const POLISH_STEPS: usize = 3;

/// All `deg p` roots of `p`, repeated according to multiplicity.
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let coeffs = p.coeffs();
    let zero = Complex64::new(0.0, 0.0);

    // exact roots at the origin
    let lowest = coeffs.iter().position(|c| *c != zero).unwrap_or(0);
    let mut roots = vec![zero; lowest];
    let rest = &coeffs[lowest..];

    match rest.len() - 1 {
        0 => {}
        1 => roots.push(-rest[0] / rest[1]),
        2 => roots.extend(quadratic_roots(rest[2], rest[1], rest[0])),
        _ => roots.extend(aberth(rest)?),
    }
    Ok(roots)
}

/// Roots of `a w^2 + b w + c`, `a != 0`.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let mut s = (b * b - a * c * 4.0).sqrt();
    if (b.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = -(b + s) * 0.5;
    if q == Complex64::new(0.0, 0.0) {
        return [q, q];
    }
    [q / a, c / q]
}

fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    let radius =
        (0..d).map(|k| (coeffs[k].norm() / lead).powf(1.0 / (d - k) as f64)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let p = Polynomial::new(coeffs.to_vec())?;

    let mut last_iteration = 0;
    for attempt in 0..ATTEMPTS {
        let offset = 0.4 + 0.9 * attempt as f64;
        let shrink = 1.0 - 0.25 * attempt as f64;
        let mut z: Vec<Complex64> =
            (0..d).map(|k| Complex64::from_polar(radius * shrink, 2.0 * PI * k as f64 / d as f64 + offset)).collect();
        match iterate(&p, &abs_coeffs, &mut z) {
            Ok(()) => {
                polish(&p, &abs_coeffs, &mut z);
                return Ok(z);
            }
            Err(it) => last_iteration = it,
        }
    }
    Err(Error::NumericFailure { context: "Aberth root iteration".into(), iteration: last_iteration })
}

/// Horner rounding bound at `z`: `4 ε Σ |c_k| |z|^k`.
#[inline]
fn rounding_level(abs_coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for c in abs_coeffs.iter().rev() {
        acc = acc * r + c;
    }
    4.0 * f64::EPSILON * acc
}

fn iterate(p: &Polynomial, abs_coeffs: &[f64], z: &mut [Complex64]) -> std::result::Result<(), usize> {
    let d = z.len();
    let mut done = vec![false; d];
    for it in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(z[i]);
            if v.norm() <= rounding_level(abs_coeffs, z[i]) {
                done[i] = true;
                continue;
            }
            all_done = false;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm_sqr() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let step = if dv.norm() == 0.0 {
                // stationary point: nudge off it
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 0.0)
            } else {
                let ratio = v / dv;
                ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion)
            };
            if !step.is_finite() {
                return Err(it);
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            return Ok(());
        }
    }
    Err(MAX_ITERATIONS)
}

fn polish(p: &Polynomial, abs_coeffs: &[f64], z: &mut [Complex64]) {
    for root in z.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (v, dv) = p.eval_with_derivative(*root);
            if v.norm() <= rounding_level(abs_coeffs, *root) || dv.norm() == 0.0 {
                break;
            }
            let candidate = *root - v / dv;
            if candidate.is_finite() && p.eval(candidate).norm() < v.norm() {
                *root = candidate;
            } else {
                break;
            }
        }
    }
}
