//! Discrete probability measures in the plane.
//!
//! Every measure is a finite set of weighted point masses. For the unit
//! circle and the arcsine distribution on `[-2, 2]` the nodes are exact
//! quadrature rules; for the measure of maximal entropy of a polynomial the
//! nodes are a Monte-Carlo sample produced by random backward iteration.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{escape_radius, roots::polynomial_roots};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Smallest node count accepted by the quadrature constructors.
pub const MIN_NODES: usize = 16;
/// Smallest sample count accepted by [`max_entropy_measure`].
pub const MIN_MME_SAMPLES: usize = 1000;
pub const MIN_BURN_IN: usize = 50;
pub const DEFAULT_BURN_IN: usize = 100;

const MASS_TOL: f64 = 1e-12;

/// `z -> a z + b` with `a != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    a: Complex64,
    b: Complex64,
}

impl AffineMap {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid("affine map coefficients must be finite"));
        }
        if a.norm() == 0.0 {
            return Err(Error::invalid("affine map scale must be nonzero"));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0) }
    }

    /// `z -> z + b`.
    pub fn translation(b: Complex64) -> Self {
        Self { a: Complex64::new(1.0, 0.0), b }
    }

    pub fn scale(&self) -> Complex64 {
        self.a
    }

    pub fn translation_part(&self) -> Complex64 {
        self.b
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    #[inline]
    pub fn apply_inverse(&self, w: Complex64) -> Complex64 {
        (w - self.b) / self.a
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.a.inv();
        AffineMap { a: inv, b: -self.b * inv }
    }
}

/// Weighted point masses with total mass one.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
    label: String,
}

impl DiscreteMeasure {
    pub fn new(nodes: Vec<Complex64>, weights: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(Error::invalid(format!("{} nodes but {} weights", nodes.len(), weights.len())));
        }
        if nodes.iter().any(|z| !z.is_finite()) {
            return Err(Error::invalid("measure nodes must be finite"));
        }
        if weights.iter().any(|&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::invalid("measure weights must be positive"));
        }
        let mass = compensated_sum(weights.iter().copied());
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::invalid(format!("total mass {mass} is not 1")));
        }
        let first = nodes.first().copied();
        if !nodes.iter().any(|z| Some(*z) != first) {
            return Err(Error::invalid("measure needs at least two distinct nodes"));
        }
        Ok(Self { nodes, weights, label: label.into() })
    }

    /// Equal weights `1/m` on the given nodes.
    pub fn uniform(nodes: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        let m = nodes.len();
        if m == 0 {
            return Err(Error::invalid("measure needs nodes"));
        }
        Self::new(nodes, vec![1.0 / m as f64; m], label)
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.weights.iter().copied())
    }

    /// `∫ z^k dμ`.
    pub fn moment(&self, k: u32) -> Complex64 {
        self.integrate(|z| z.powu(k))
    }

    pub fn integrate(&self, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&z, &w)| f(z) * w).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.nodes.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Constructors the experiments know by name.
#[derive(Clone, Debug)]
pub enum MeasureFamily {
    UnitCircle { m: usize },
    IntervalEquilibrium { m: usize },
    MaxEntropy { f: Polynomial, m: usize, seed: u64, burn_in: usize },
}

impl MeasureFamily {
    pub fn build(&self) -> Result<DiscreteMeasure> {
        match self {
            MeasureFamily::UnitCircle { m } => unit_circle_measure(*m),
            MeasureFamily::IntervalEquilibrium { m } => interval_equilibrium_measure(*m),
            MeasureFamily::MaxEntropy { f, m, seed, burn_in } => max_entropy_measure(f, *m, *seed, *burn_in),
        }
    }
}

/// The `m`-th roots of unity with equal weights: normalized arc length on
/// the unit circle, exact for trigonometric polynomials of degree `< m`.
pub fn unit_circle_measure(m: usize) -> Result<DiscreteMeasure> {
    if m < MIN_NODES {
        return Err(Error::invalid(format!("circle measure needs m >= {MIN_NODES}, got {m}")));
    }
    circle_quadrature(m)
}

pub(crate) fn circle_quadrature(m: usize) -> Result<DiscreteMeasure> {
    let nodes = (0..m).map(|k| root_of_unity(k, m)).collect();
    DiscreteMeasure::uniform(nodes, "circle")
}

/// Exact for `k = 0, m/4, m/2, 3m/4` so the square quadrature has no
/// rounding noise on the axes.
fn root_of_unity(k: usize, m: usize) -> Complex64 {
    if (4 * k).is_multiple_of(m) {
        match 4 * k / m {
            0 => return Complex64::new(1.0, 0.0),
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            _ => return Complex64::new(0.0, -1.0),
        }
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

/// Gauss-Chebyshev nodes `2 cos((2k-1)π/(2m))` with weights `1/m`: the
/// equilibrium (arcsine) measure of `[-2, 2]`, exact up to degree `2m-1`.
pub fn interval_equilibrium_measure(m: usize) -> Result<DiscreteMeasure> {
    if m < MIN_NODES {
        return Err(Error::invalid(format!("interval measure needs m >= {MIN_NODES}, got {m}")));
    }
    let nodes = (1..=m)
        .map(|k| {
            let theta = (2 * k - 1) as f64 * PI / (2 * m) as f64;
            Complex64::new(2.0 * theta.cos(), 0.0)
        })
        .collect();
    DiscreteMeasure::uniform(nodes, "interval")
}

/// Samples the measure of maximal entropy of a monic centered polynomial by
/// random backward iteration.
///
/// The chain starts at the escape radius of `f` and repeatedly jumps to one
/// of the `d` preimages chosen uniformly. The generator is ChaCha8 seeded
/// with `seed`, so the node sequence is a pure function of the arguments.
pub fn max_entropy_measure(f: &Polynomial, m: usize, seed: u64, burn_in: usize) -> Result<DiscreteMeasure> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::invalid("maximal entropy measure needs deg f >= 2"));
    }
    let one = Complex64::new(1.0, 0.0);
    if (f.leading() - one).norm() > 1e-12 || f.coeffs()[d - 1].norm() > 1e-12 {
        return Err(Error::invalid("f must be monic and centered"));
    }
    if m < MIN_MME_SAMPLES {
        return Err(Error::invalid(format!("need m >= {MIN_MME_SAMPLES} samples, got {m}")));
    }
    if burn_in < MIN_BURN_IN {
        return Err(Error::invalid(format!("need burn_in >= {MIN_BURN_IN}, got {burn_in}")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = Complex64::new(escape_radius(f)?, 0.0);
    let mut shifted = f.coeffs().to_vec();
    let c0 = shifted[0];
    let mut nodes = Vec::with_capacity(m);
    for step in 0..burn_in + m {
        shifted[0] = c0 - z;
        let preimages = Polynomial::new(shifted.clone())
            .and_then(|p| polynomial_roots(&p))
            .map_err(|_| Error::NumericFailure { context: "backward iteration root solve".into(), iteration: step })?;
        let branch = rng.gen_range(0..d as u32) as usize;
        z = preimages[branch];
        if step >= burn_in {
            nodes.push(z);
        }
    }
    DiscreteMeasure::uniform(nodes, "mme")
}

/// `ν = φ_* μ`: nodes mapped by `φ`, weights untouched.
pub fn pushforward(mu: &DiscreteMeasure, phi: &AffineMap) -> DiscreteMeasure {
    DiscreteMeasure {
        nodes: mu.nodes.iter().map(|&z| phi.apply(z)).collect(),
        weights: mu.weights.clone(),
        label: format!("{}:pushforward", mu.label),
    }
}

/// Neumaier summation.
pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
