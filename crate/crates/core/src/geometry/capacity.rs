//! Logarithmic capacity from greedy Leja points.

use super::PointSet;
use crate::error::{Error, Result};

pub const MIN_LEJA_POINTS: usize = 16;

/// The first `m` greedy Leja points of `set`, as indices.
///
/// Starts at the point of largest modulus (lowest index on ties); each
/// next point maximizes the sum of log-distances to the points already
/// chosen. Candidates coinciding with a chosen point are skipped.
pub fn leja_indices(set: &PointSet, m: usize) -> Result<Vec<usize>> {
    let pts = set.points();
    let first = pts
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (k, z)| if z.norm() > best.1 { (k, z.norm()) } else { best })
        .0;
    let mut chosen = vec![first];
    let mut score = vec![0.0f64; pts.len()];
    while chosen.len() < m {
        let last = pts[*chosen.last().expect("non-empty")];
        let mut best: Option<(usize, f64)> = None;
        for (k, z) in pts.iter().enumerate() {
            score[k] += (z - last).norm().ln();
            let s = score[k];
            if s.is_finite() && best.is_none_or(|(_, b)| s > b) {
                best = Some((k, s));
            }
        }
        match best {
            Some((k, _)) => chosen.push(k),
            None => {
                return Err(Error::invalid(format!("only {} distinct points available, {m} requested", chosen.len())))
            }
        }
    }
    Ok(chosen)
}

/// Transfinite-diameter estimate `exp(2/(m(m-1)) Σ_{i<j} log|z_i - z_j|)`
/// over the first `m` Leja points of `set`.
pub fn leja_capacity(set: &PointSet, m: usize) -> Result<f64> {
    if m < MIN_LEJA_POINTS {
        return Err(Error::invalid(format!("Leja capacity needs m >= {MIN_LEJA_POINTS}")));
    }
    if set.len() < m {
        return Err(Error::invalid(format!("{} points cannot supply {m} Leja points", set.len())));
    }
    let idx = leja_indices(set, m)?;
    let pts: Vec<_> = idx.iter().map(|&k| set.points()[k]).collect();
    let mut total = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            total += (pts[i] - pts[j]).norm().ln();
        }
    }
    Ok((2.0 * total / (m * (m - 1)) as f64).exp())
}
