//! Capacity read off leading coefficients agrees with Leja-point estimates,
//! and both transform as `cap(a K + b) = |a| cap(K)`.

use num_complex::Complex64;
use orthojulia::geometry::{leja_capacity, PointSet};
use orthojulia::measure::{interval_equilibrium_measure, pushforward, AffineMap};
use orthojulia::orthopoly::{capacity_from_gamma, orthonormalize};

fn main() -> orthojulia::Result<()> {
    let phi = AffineMap::new(Complex64::from_polar(1.5, 0.7), Complex64::new(0.3, -0.2))?;
    let mu = pushforward(&interval_equilibrium_measure(2048)?, &phi);
    let seq = orthonormalize(&mu, 20)?;
    let from_gamma = capacity_from_gamma(seq.gammas()[20], 20)?;

    let segment = PointSet::segment(Complex64::new(-2.0, 0.0), Complex64::new(2.0, 0.0), 4097)?;
    let leja = leja_capacity(&segment.map(|z| phi.apply(z)), 200)?;

    println!("expected |a| cap([-2,2]) = {:.4}", phi.scale().norm());
    println!("gamma_20^(-1/20)         = {from_gamma:.4}");
    println!("leja estimate (m = 200)  = {leja:.4}");
    Ok(())
}
