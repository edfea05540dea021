//! Connectedness loci of two-parameter families `a·q + b`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::BitMask;
use super::{critical_orbits_bounded, critical_points, escape_radius, iterate_polynomial, MIN_CONNECTEDNESS_ITER};
use crate::error::{Error, Result};
use crate::orthopoly::{chebyshev_closed_form, ScaledSequence};
use crate::polynomial::Polynomial;

/// The families a scan can sweep.
#[derive(Clone, Debug)]
pub enum LocusFamily {
    /// `a · T_n + b` with `T_n` the monic Chebyshev polynomial of `[-2, 2]`.
    ScaledChebyshev,
    /// `z^n + c` with `c = a + ib`; the two grids are `Re c` and `Im c`.
    Multibrot,
    /// `a · f^n + b` (the `n`-th iterate of `f`).
    AffineIterates { f: Polynomial },
    /// `a · q_n + b` for the `n`-th member of a computed sequence.
    Sequence(ScaledSequence),
}

impl LocusFamily {
    pub fn label(&self) -> &'static str {
        match self {
            LocusFamily::ScaledChebyshev => "cheb",
            LocusFamily::Multibrot => "multibrot",
            LocusFamily::AffineIterates { .. } => "iterate",
            LocusFamily::Sequence(_) => "sequence",
        }
    }

    /// The polynomial the parameters act on.
    pub fn base(&self, n: usize) -> Result<Polynomial> {
        let base = match self {
            LocusFamily::ScaledChebyshev => chebyshev_closed_form(n)?,
            LocusFamily::Multibrot => Polynomial::monomial(n),
            LocusFamily::AffineIterates { f } => iterate_polynomial(f, n)?,
            LocusFamily::Sequence(seq) => seq
                .polys()
                .get(n)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("sequence has no member of index {n}")))?,
        };
        if base.degree() < 2 {
            return Err(Error::invalid("locus scans need degree >= 2 members"));
        }
        Ok(base)
    }

    /// The family member at parameter cell `(a, b)`.
    pub fn member(&self, base: &Polynomial, a: f64, b: f64) -> Result<Polynomial> {
        match self {
            LocusFamily::Multibrot => base.affine_image(Complex64::new(1.0, 0.0), Complex64::new(a, b)),
            _ => base.affine_image(Complex64::new(a, 0.0), Complex64::new(b, 0.0)),
        }
    }
}

/// Connectedness verdicts over a rectangular parameter grid.
#[derive(Clone, Debug)]
pub struct LocusScan {
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    pub n: usize,
    /// Column `i` is `a_values[i]`, row `j` is `b_values[j]`.
    pub mask: BitMask,
    pub family: String,
    pub max_iter: usize,
}

impl LocusScan {
    pub fn is_connected_at(&self, i: usize, j: usize) -> bool {
        self.mask.get(i, j)
    }

    pub fn fraction_connected(&self) -> f64 {
        self.mask.count() as f64 / (self.a_values.len() * self.b_values.len()) as f64
    }

    /// `(a, b)` of every connected cell.
    pub fn connected_parameters(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.mask.set_cells().map(|(i, j)| (self.a_values[i], self.b_values[j]))
    }

    /// Index pair of the cell closest to `(a, b)`.
    pub fn nearest_cell(&self, a: f64, b: f64) -> (usize, usize) {
        let nearest = |values: &[f64], x: f64| {
            values
                .iter()
                .enumerate()
                .min_by(|(_, u), (_, v)| (*u - x).abs().total_cmp(&(*v - x).abs()))
                .map(|(k, _)| k)
                .unwrap_or(0)
        };
        (nearest(&self.a_values, a), nearest(&self.b_values, b))
    }
}

/// Sweeps `family` over `a_grid × b_grid`.
///
/// Critical points of `a·q + b` are those of `q`, so they are computed once;
/// each cell then only follows the critical orbits of its own member.
pub fn locus_scan(
    family: &LocusFamily,
    n: usize,
    a_grid: &[f64],
    b_grid: &[f64],
    max_iter: usize,
) -> Result<LocusScan> {
    if a_grid.is_empty() || b_grid.is_empty() {
        return Err(Error::invalid("parameter grids must be non-empty"));
    }
    if a_grid.iter().chain(b_grid).any(|v| !v.is_finite()) {
        return Err(Error::invalid("parameter grids must be finite"));
    }
    if !matches!(family, LocusFamily::Multibrot) && a_grid.contains(&0.0) {
        return Err(Error::invalid("a = 0 is not an admissible scale"));
    }
    if max_iter < MIN_CONNECTEDNESS_ITER {
        return Err(Error::invalid(format!("max_iter must be >= {MIN_CONNECTEDNESS_ITER}")));
    }
    let base = family.base(n)?;
    let crit = critical_points(&base)?;
    let (nx, ny) = (a_grid.len(), b_grid.len());
    let bits = (0..ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let (base, crit) = (&base, &crit);
            (0..nx).map(move |i| -> Result<bool> {
                let p = family.member(base, a_grid[i], b_grid[j])?;
                Ok(critical_orbits_bounded(&p, crit, escape_radius(&p)?, max_iter))
            })
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(LocusScan {
        a_values: a_grid.to_vec(),
        b_values: b_grid.to_vec(),
        n,
        mask: BitMask::new(nx, ny, bits),
        family: family.label().to_string(),
        max_iter,
    })
}

/// `count` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            (0..count).map(|k| if k + 1 == count { hi } else { lo + k as f64 * step }).collect()
        }
    }
}
