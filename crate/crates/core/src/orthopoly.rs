//! Orthonormal polynomials of a discrete planar measure.
//!
//! [`orthonormalize`] runs an Arnoldi process in `L²(μ)`: each new
//! polynomial is `z·p_k` orthogonalized against `p_0..p_k` by modified
//! Gram-Schmidt (two passes), so the monomial basis, whose Gram matrix is a
//! badly conditioned Vandermonde product, is never formed. Values at the
//! nodes and monomial coefficients are carried side by side; the
//! coefficients are what the rest of the crate composes and iterates.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{AffineMap, DiscreteMeasure};
use crate::polynomial::Polynomial;

pub const MAX_DEGREE: usize = 64;
/// Nodes required per degree of the sequence.
pub const NODES_PER_DEGREE: usize = 8;
/// Gram residual above which a sequence is rejected.
pub const GRAM_FAILURE: f64 = 1e-6;

/// `Σ_i w_i f(z_i) conj(g(z_i))`.
pub fn inner_product(mu: &DiscreteMeasure, f: &Polynomial, g: &Polynomial) -> Complex64 {
    mu.nodes().iter().zip(mu.weights()).map(|(&z, &w)| f.eval(z) * g.eval(z).conj() * w).sum()
}

/// The orthonormal sequence `p_0, ..., p_N` with positive leading
/// coefficients.
#[derive(Clone, Debug)]
pub struct OrthoSequence {
    measure: Arc<DiscreteMeasure>,
    polys: Vec<Polynomial>,
    gammas: Vec<f64>,
    /// Column `k` holds `h_{0,k}, ..., h_{k+1,k}` with
    /// `z p_k = Σ_j h_{j,k} p_j`.
    hessenberg: Vec<Vec<Complex64>>,
    gram_residual: f64,
}

impl OrthoSequence {
    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn hessenberg(&self) -> &[Vec<Complex64>] {
        &self.hessenberg
    }

    /// `max |G - I|` for the discrete Gram matrix of the returned polynomials.
    pub fn gram_residual(&self) -> f64 {
        self.gram_residual
    }

    /// Highest degree `N`.
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }
}

/// Orthonormalizes `1, z, ..., z^N` against `mu`.
pub fn orthonormalize(mu: &DiscreteMeasure, max_degree: usize) -> Result<OrthoSequence> {
    if max_degree > MAX_DEGREE {
        return Err(Error::invalid(format!("degree {max_degree} exceeds the cap of {MAX_DEGREE}")));
    }
    if mu.len() < NODES_PER_DEGREE * max_degree {
        return Err(Error::invalid(format!(
            "{} nodes cannot resolve degree {max_degree} (need at least {})",
            mu.len(),
            NODES_PER_DEGREE * max_degree
        )));
    }
    let nodes = mu.nodes();
    let weights = mu.weights();
    let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
        u.iter().zip(v).zip(weights).map(|((a, b), &w)| a * b.conj() * w).sum()
    };

    let mut values: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); mu.len()]];
    let mut coeffs: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]];
    let mut gammas = vec![1.0];
    let mut hessenberg = Vec::with_capacity(max_degree);

    for k in 0..max_degree {
        let mut v: Vec<Complex64> = nodes.iter().zip(&values[k]).map(|(z, p)| z * p).collect();
        let mut c = Vec::with_capacity(k + 2);
        c.push(Complex64::new(0.0, 0.0));
        c.extend_from_slice(&coeffs[k]);
        let mut h = vec![Complex64::new(0.0, 0.0); k + 2];

        for _pass in 0..2 {
            for j in 0..=k {
                let proj = dot(&v, &values[j]);
                h[j] += proj;
                for (vi, pj) in v.iter_mut().zip(&values[j]) {
                    *vi -= proj * pj;
                }
                for (ci, pj) in c.iter_mut().zip(&coeffs[j]) {
                    *ci -= proj * pj;
                }
            }
        }

        let norm = dot(&v, &v).re.sqrt();
        let lead = c[k + 1];
        if !(norm > 0.0) || !norm.is_finite() || lead.norm() == 0.0 {
            return Err(Error::IllConditioned { degree: k + 1, residual: f64::INFINITY });
        }
        // divide by the norm, then by the phase of the leading coefficient
        let phase = lead / lead.norm();
        let scale = (phase * norm).inv();
        v.iter_mut().for_each(|x| *x *= scale);
        c.iter_mut().for_each(|x| *x *= scale);
        h[k + 1] = phase * norm;
        gammas.push(lead.norm() / norm);
        c[k + 1] = Complex64::new(c[k + 1].norm(), 0.0);

        values.push(v);
        coeffs.push(c);
        hessenberg.push(h);
    }

    let polys = coeffs.into_iter().map(Polynomial::new).collect::<Result<Vec<_>>>()?;
    let gram = gram_matrix(mu, &polys);
    let mut gram_residual: f64 = 0.0;
    for (n, gram_row) in gram.iter().enumerate() {
        let row = gram_row[..=n]
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let target = if j == n { 1.0 } else { 0.0 };
                (g - target).norm()
            })
            .fold(0.0, f64::max);
        if row > GRAM_FAILURE || !row.is_finite() {
            return Err(Error::IllConditioned { degree: n, residual: row });
        }
        gram_residual = gram_residual.max(row);
    }

    Ok(OrthoSequence { measure: Arc::new(mu.clone()), polys, gammas, hessenberg, gram_residual })
}

/// `G_{jk} = <p_j, p_k>_μ`, evaluating the polynomials by Horner's rule.
pub fn gram_matrix(mu: &DiscreteMeasure, polys: &[Polynomial]) -> Vec<Vec<Complex64>> {
    let values: Vec<Vec<Complex64>> = polys.iter().map(|p| mu.nodes().iter().map(|&z| p.eval(z)).collect()).collect();
    let n = polys.len();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..=j {
            let g: Complex64 =
                values[j].iter().zip(&values[k]).zip(mu.weights()).map(|((a, b), &w)| a * b.conj() * w).sum();
            gram[j][k] = g;
            gram[k][j] = g.conj();
        }
    }
    gram
}

/// `P_n = p_n / γ_n`, leading coefficient set to exactly one.
pub fn monic_sequence(seq: &OrthoSequence) -> Vec<Polynomial> {
    seq.polys
        .iter()
        .zip(&seq.gammas)
        .map(|(p, &g)| {
            let mut c: Vec<Complex64> = p.coeffs().iter().map(|c| c / g).collect();
            let d = c.len() - 1;
            c[d] = Complex64::new(1.0, 0.0);
            Polynomial::new(c).expect("unit leading coefficient")
        })
        .collect()
}

/// How the scales `a_n` of `q_n = a_n p_n` are chosen.
#[derive(Clone, Debug)]
pub enum ScaleRule {
    /// `a_n = 1`.
    Unit,
    /// `a_n = 1 / γ_n`.
    Monic,
    /// `a_n = e^{iθ_n}`.
    Phase(Vec<f64>),
    Custom(Vec<Complex64>),
}

/// `q_n = a_n p_n` for a base orthonormal sequence.
#[derive(Clone, Debug)]
pub struct ScaledSequence {
    base: OrthoSequence,
    scales: Vec<Complex64>,
    polys: Vec<Polynomial>,
}

impl ScaledSequence {
    pub fn base(&self) -> &OrthoSequence {
        &self.base
    }

    pub fn scales(&self) -> &[Complex64] {
        &self.scales
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// `(n, |log|a_n|| / n)` for `n >= 1`; the scales form an asymptotically
    /// orthonormal sequence when this tends to zero.
    pub fn diagnostics(&self) -> Vec<(usize, f64)> {
        self.scales.iter().enumerate().skip(1).map(|(n, a)| (n, a.norm().ln().abs() / n as f64)).collect()
    }
}

pub fn scale_sequence(seq: &OrthoSequence, rule: &ScaleRule) -> Result<ScaledSequence> {
    let len = seq.polys.len();
    let take = |what: &str, have: usize| -> Result<()> {
        if have < len {
            return Err(Error::invalid(format!("{what} rule lists {have} scales, sequence has {len}")));
        }
        Ok(())
    };
    let scales: Vec<Complex64> = match rule {
        ScaleRule::Unit => vec![Complex64::new(1.0, 0.0); len],
        ScaleRule::Monic => seq.gammas.iter().map(|g| Complex64::new(1.0 / g, 0.0)).collect(),
        ScaleRule::Phase(angles) => {
            take("phase", angles.len())?;
            angles[..len].iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
        }
        ScaleRule::Custom(values) => {
            take("custom", values.len())?;
            values[..len].to_vec()
        }
    };
    if let Some(n) = scales.iter().position(|a| !(a.norm() > 0.0) || !a.is_finite()) {
        return Err(Error::invalid(format!("scale a_{n} must be finite and nonzero")));
    }
    let polys = seq.polys.iter().zip(&scales).map(|(p, &a)| p.scale(a)).collect::<Result<Vec<_>>>()?;
    Ok(ScaledSequence { base: seq.clone(), scales, polys })
}

/// `q_n(ν; z) = q_n(μ; φ⁻¹(z))`, the sequence for the pushforward `ν = φ_* μ`.
pub fn transport_sequence(seq: &ScaledSequence, phi: &AffineMap) -> Result<Vec<Polynomial>> {
    let inv = phi.inverse();
    seq.polys.iter().map(|q| q.compose_affine(inv.scale(), inv.translation_part())).collect()
}

/// `cap(K_p) = γ^{-1/(n-1)}` for a degree-`n` polynomial with leading
/// coefficient of modulus `γ`.
pub fn capacity_from_gamma(gamma: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("capacity from the leading coefficient needs n >= 2"));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::invalid("leading coefficient must be positive"));
    }
    Ok(gamma.powf(-1.0 / (n - 1) as f64))
}

/// `(n, |γ_n^{-1/n} - cap_S|)` for `n = 1..=N`.
pub fn nthroot_regularity_diagnostic(seq: &OrthoSequence, cap_s: f64) -> Result<Vec<(usize, f64)>> {
    if !(cap_s > 0.0) {
        return Err(Error::invalid("capacity must be positive"));
    }
    Ok(seq.gammas.iter().enumerate().skip(1).map(|(n, g)| (n, (g.powf(-1.0 / n as f64) - cap_s).abs())).collect())
}

/// Monic Chebyshev polynomial of `[-2, 2]`: `T_1 = z`, `T_2 = z² - 2`,
/// `T_{n+1} = z T_n - T_{n-1}`.
pub fn chebyshev_closed_form(n: usize) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::invalid("Chebyshev index must be >= 1"));
    }
    let mut prev = vec![0.0, 1.0];
    if n == 1 {
        return Polynomial::from_real(&prev);
    }
    let mut cur = vec![-2.0, 0.0, 1.0];
    for _ in 2..n {
        let mut next = vec![0.0; cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Polynomial::from_real(&cur)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use super::*;
    use crate::measure::{interval_equilibrium_measure, unit_circle_measure};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_product_examples() {
        let circle = unit_circle_measure(4096).unwrap();
        let z = Polynomial::monomial(1);
        assert!((inner_product(&circle, &z, &z) - c(1.0, 0.0)).norm() <= 1e-12);
        let direct: Complex64 = circle.nodes().iter().map(|w| w.powu(2) * w.powu(3).conj() / 4096.0).sum();
        assert!(direct.norm() <= 1e-12);
        let ip = inner_product(&circle, &Polynomial::monomial(2), &Polynomial::monomial(3));
        assert!(ip.norm() <= 1e-12);
        let interval = interval_equilibrium_measure(2048).unwrap();
        let one = Polynomial::one();
        assert!((inner_product(&interval, &one, &one) - c(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn degree_zero_sequence() {
        let mu = interval_equilibrium_measure(64).unwrap();
        let seq = orthonormalize(&mu, 0).unwrap();
        assert_eq!(seq.polys(), &[Polynomial::one()]);
        assert_eq!(seq.gammas(), &[1.0]);
    }

    #[test]
    fn guards() {
        let mu = unit_circle_measure(64).unwrap();
        assert!(matches!(orthonormalize(&mu, 20), Err(Error::InvalidArgument(_))));
        let big = unit_circle_measure(1024).unwrap();
        assert!(matches!(orthonormalize(&big, 65), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn circle_sequence_is_the_monomials() {
        let seq = orthonormalize(&unit_circle_measure(4096).unwrap(), 20).unwrap();
        for (n, p) in seq.polys().iter().enumerate() {
            assert_eq!(p.degree(), n);
            assert!((seq.gammas()[n] - 1.0).abs() <= 1e-8);
            assert!(p.max_coeff_distance(&Polynomial::monomial(n)) < 1e-8);
        }
        assert!(seq.gram_residual() <= 1e-8);
    }

    #[test]
    fn interval_sequence_gammas() {
        let seq = orthonormalize(&interval_equilibrium_measure(2048).unwrap(), 15).unwrap();
        for n in 1..=15 {
            assert!((seq.gammas()[n] - FRAC_1_SQRT_2).abs() <= 1e-6, "gamma_{n}");
        }
        let monic = monic_sequence(&seq);
        assert!(monic[2].max_coeff_distance(&Polynomial::from_real(&[-2.0, 0.0, 1.0]).unwrap()) <= 1e-6);
        assert!(monic[3].max_coeff_distance(&chebyshev_closed_form(3).unwrap()) <= 1e-6);
        assert!(monic.iter().all(|p| p.leading() == c(1.0, 0.0)));
    }

    #[test]
    fn hessenberg_reproduces_the_shift() {
        let mu = interval_equilibrium_measure(256).unwrap();
        let seq = orthonormalize(&mu, 6).unwrap();
        // z p_k = Σ_j h_{j,k} p_j checked at a few points
        for k in 0..6 {
            for t in [0.3, -1.1, 1.7] {
                let z = c(t, 0.2);
                let lhs = z * seq.polys()[k].eval(z);
                let rhs: Complex64 =
                    seq.hessenberg()[k].iter().enumerate().map(|(j, h)| h * seq.polys()[j].eval(z)).sum();
                assert!((lhs - rhs).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn scale_rules() {
        let seq = orthonormalize(&interval_equilibrium_measure(512).unwrap(), 8).unwrap();
        let unit = scale_sequence(&seq, &ScaleRule::Unit).unwrap();
        assert_eq!(unit.polys(), seq.polys());

        let monic = scale_sequence(&seq, &ScaleRule::Monic).unwrap();
        for (p, want) in monic.polys().iter().skip(1).zip(1..) {
            assert!(p.max_coeff_distance(&chebyshev_closed_form(want).unwrap()) < 1e-8);
        }
        let d = monic.diagnostics();
        for (n, v) in &d {
            assert!((v - 2f64.sqrt().ln() / *n as f64).abs() < 1e-9);
        }
        assert!(d.windows(2).all(|w| w[1].1 < w[0].1));

        let flipped = scale_sequence(&seq, &ScaleRule::Phase(vec![PI; 9])).unwrap();
        for (q, (p, g)) in flipped.polys().iter().zip(seq.polys().iter().zip(seq.gammas())) {
            assert!((q.leading() + c(*g, 0.0)).norm() < 1e-12);
            for k in 0..100 {
                let z = Complex64::from_polar(0.02 * k as f64, 0.61 * k as f64);
                assert!((q.eval(z).norm() - p.eval(z).norm()).abs() <= 1e-12 * (1.0 + p.eval(z).norm()));
            }
        }
    }

    #[test]
    fn scale_rule_errors() {
        let seq = orthonormalize(&interval_equilibrium_measure(64).unwrap(), 3).unwrap();
        let zero = vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(scale_sequence(&seq, &ScaleRule::Custom(zero)), Err(Error::InvalidArgument(_))));
        assert!(scale_sequence(&seq, &ScaleRule::Phase(vec![0.0; 2])).is_err());
    }

    #[test]
    fn transport_examples() {
        let seq = orthonormalize(&unit_circle_measure(256).unwrap(), 5).unwrap();
        let unit = scale_sequence(&seq, &ScaleRule::Unit).unwrap();
        let shifted = transport_sequence(&unit, &AffineMap::translation(c(-1.0, 0.0))).unwrap();
        let cube_shift = Polynomial::from_real(&[1.0, 3.0, 3.0, 1.0]).unwrap();
        assert!(shifted[3].max_coeff_distance(&cube_shift) < 1e-12);

        let same = transport_sequence(&unit, &AffineMap::identity()).unwrap();
        for (a, b) in same.iter().zip(unit.polys()) {
            assert!(a.max_coeff_distance(b) <= 1e-14);
        }

        let doubled = transport_sequence(&unit, &AffineMap::new(c(2.0, 0.0), c(0.0, 0.0)).unwrap()).unwrap();
        let expect = Polynomial::from_real(&[0.0, 0.0, 0.25]).unwrap();
        assert!(doubled[2].max_coeff_distance(&expect) < 1e-12);
        for k in 0..50 {
            let z = Complex64::from_polar(0.1 * k as f64, 1.3 * k as f64);
            assert!((doubled[2].eval(z) - unit.polys()[2].eval(z / 2.0)).norm() < 1e-12 * (1.0 + z.norm_sqr()));
        }
    }

    #[test]
    fn capacity_formula() {
        assert_eq!(capacity_from_gamma(1.0, 7).unwrap(), 1.0);
        assert!((capacity_from_gamma(FRAC_1_SQRT_2, 3).unwrap() - 2f64.powf(0.25)).abs() < 1e-12);
        assert!((capacity_from_gamma(2f64.powf(-0.5), 3).unwrap() - 1.189207).abs() < 1e-6);
        assert!((capacity_from_gamma(4.0, 3).unwrap() - 0.5).abs() < 1e-15);
        assert!(capacity_from_gamma(4.0, 1).is_err());
    }

    #[test]
    fn regularity_diagnostic() {
        let circle = orthonormalize(&unit_circle_measure(4096).unwrap(), 20).unwrap();
        assert!(nthroot_regularity_diagnostic(&circle, 1.0).unwrap().iter().all(|(_, e)| *e < 1e-8));

        let interval = orthonormalize(&interval_equilibrium_measure(2048).unwrap(), 15).unwrap();
        let e = nthroot_regularity_diagnostic(&interval, 1.0).unwrap();
        let e15 = e.last().unwrap().1;
        assert!((e15 - (2f64.powf(1.0 / 30.0) - 1.0)).abs() < 1e-6);
        assert!(e15 < 0.03);
        assert!(e[1..].windows(2).all(|w| w[1].1 < w[0].1));
        assert!(nthroot_regularity_diagnostic(&interval, 0.0).is_err());
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_closed_form(1).unwrap(), Polynomial::from_real(&[0.0, 1.0]).unwrap());
        assert_eq!(chebyshev_closed_form(2).unwrap(), Polynomial::from_real(&[-2.0, 0.0, 1.0]).unwrap());
        let t4 = chebyshev_closed_form(4).unwrap();
        assert_eq!(t4, Polynomial::from_real(&[2.0, 0.0, -4.0, 0.0, 1.0]).unwrap());
        // 2cos(4θ) identity at θ = π/8
        let theta = PI / 8.0;
        assert!((t4.eval(c(2.0 * theta.cos(), 0.0)).re - 2.0 * (4.0 * theta).cos()).abs() < 1e-14);
        assert!(chebyshev_closed_form(0).is_err());
    }
}
