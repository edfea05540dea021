//! Orthonormal polynomials of the uniform measure on the unit circle are the
//! monomials. Prints the Gram residual and the largest off-leading coefficient.

use orthojulia::measure::unit_circle_measure;
use orthojulia::orthopoly::orthonormalize;

fn main() -> orthojulia::Result<()> {
    let mu = unit_circle_measure(4096)?;
    let seq = orthonormalize(&mu, 20)?;
    let off = seq
        .polys()
        .iter()
        .enumerate()
        .flat_map(|(n, p)| p.coeffs().iter().enumerate().filter(move |(k, _)| *k != n).map(|(_, c)| c.norm()))
        .fold(0.0f64, f64::max);
    println!("gram residual      {:.3e}", seq.gram_residual());
    println!("max off-leading    {off:.3e}");
    for (n, g) in seq.gammas().iter().enumerate().step_by(5) {
        println!("gamma_{n:<2} = {g:.15}");
    }
    Ok(())
}
