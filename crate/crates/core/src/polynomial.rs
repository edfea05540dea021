//! Dense univariate complex polynomials in the monomial basis.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexScalar = Complex64;

/// Leading coefficients at or below this magnitude are treated as zero.
pub const LEADING_EPS: f64 = 1e-300;

/// Polynomial with ascending coefficients `c0, c1, ..., cd` and `cd != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("polynomial coefficients must be finite"));
        }
        let lead = coeffs[coeffs.len() - 1];
        if lead.norm() <= LEADING_EPS {
            return Err(Error::invalid(format!(
                "leading coefficient of a degree {} polynomial is zero",
                coeffs.len() - 1
            )));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Drops vanishing top coefficients before validating; the zero
    /// polynomial is still rejected.
    pub fn trimmed(mut coeffs: Vec<Complex64>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1].norm() <= LEADING_EPS {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self { coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation with no overflow handling.
    #[inline]
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.coeffs[self.coeffs.len() - 1];
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluates `p` and `p'` together.
    #[inline]
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = self.coeffs[self.coeffs.len() - 1];
        let mut dp = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev().skip(1) {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// The derivative; `None` for constants.
    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        Some(Self { coeffs })
    }

    pub fn scale(&self, s: Complex64) -> Result<Polynomial> {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `a * p + b`.
    pub fn affine_image(&self, a: Complex64, b: Complex64) -> Result<Polynomial> {
        let mut coeffs: Vec<Complex64> = self.coeffs.iter().map(|c| c * a).collect();
        coeffs[0] += b;
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `p(alpha * z + beta)`, by Horner's scheme over polynomials.
    pub fn compose_affine(&self, alpha: Complex64, beta: Complex64) -> Result<Polynomial> {
        let d = self.degree();
        let mut acc = vec![Complex64::new(0.0, 0.0); d + 1];
        acc[0] = self.coeffs[d];
        for (len, c) in (1..).zip(self.coeffs.iter().rev().skip(1)) {
            // acc <- acc * (alpha z + beta) + c
            for k in (0..=len).rev() {
                let shifted = if k > 0 { acc[k - 1] * alpha } else { Complex64::new(0.0, 0.0) };
                let kept = if k < len { acc[k] * beta } else { Complex64::new(0.0, 0.0) };
                acc[k] = shifted + kept;
            }
            acc[0] += c;
        }
        Self::new(acc)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let d = self.degree();
        let mut acc = Polynomial { coeffs: vec![self.coeffs[d]] };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Largest coefficient-wise distance, padding the shorter one with zeros.
    pub fn max_coeff_distance(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
