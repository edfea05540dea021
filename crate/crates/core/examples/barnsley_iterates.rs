//! The orthogonal polynomials of the maximal entropy measure of `f` include
//! the iterates of `f`: for `f = z^2 - 1`, the monic polynomial of degree 4
//! is `f∘f` up to Monte-Carlo error.

use orthojulia::dynamics::iterate_polynomial;
use orthojulia::measure::max_entropy_measure;
use orthojulia::orthopoly::{monic_sequence, orthonormalize};
use orthojulia::Polynomial;

fn main() -> orthojulia::Result<()> {
    let f = Polynomial::from_real(&[-1.0, 0.0, 1.0])?;
    let mu = max_entropy_measure(&f, 200_000, 1, 100)?;
    let monic = monic_sequence(&orthonormalize(&mu, 8)?);
    for k in 1..=3 {
        let fk = iterate_polynomial(&f, k)?;
        let d = fk.degree();
        let err = monic[d].coeffs().iter().zip(fk.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        println!("k = {k}  degree {d}  max |monic - f^k| = {err:.4}");
    }
    Ok(())
}
