//! Sup-norm gap between the Green's function of `z^n + c` and its degree-n
//! approximation `log|q_n|/n`, sampled on a grid outside the filled Julia set.

use num_complex::Complex64;
use orthojulia::dynamics::{green_gap, GridSpec};
use orthojulia::Polynomial;

fn main() -> orthojulia::Result<()> {
    let grid = GridSpec::new(-2.0, 2.0, -2.0, 2.0, 256, 256)?;
    for n in [4, 8, 16, 32] {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = Complex64::new(0.25, 0.0);
        coeffs[n] = Complex64::new(1.0, 0.0);
        let gap = green_gap(&Polynomial::new(coeffs)?, n, &grid, 64)?;
        println!("n = {n:>2}  gap = {gap:.5}  n*gap = {:.4}", n as f64 * gap);
    }
    Ok(())
}
