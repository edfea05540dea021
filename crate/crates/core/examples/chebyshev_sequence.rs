//! Monic orthogonal polynomials of the arcsine law on [-2, 2] against the
//! closed form `2 T_n(z/2)`.

use orthojulia::measure::interval_equilibrium_measure;
use orthojulia::orthopoly::{chebyshev_closed_form, monic_sequence, nthroot_regularity_diagnostic, orthonormalize};

fn main() -> orthojulia::Result<()> {
    let mu = interval_equilibrium_measure(2048)?;
    let seq = orthonormalize(&mu, 15)?;
    for (n, p) in monic_sequence(&seq).iter().enumerate().skip(1) {
        let exact = chebyshev_closed_form(n)?;
        let err = p.coeffs().iter().zip(exact.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        println!("n = {n:>2}  max coefficient error {err:.2e}");
    }
    for (n, e) in nthroot_regularity_diagnostic(&seq, 1.0)? {
        println!("n = {n:>2}  |gamma_n^(-1/n) - cap| = {e:.4}");
    }
    Ok(())
}
