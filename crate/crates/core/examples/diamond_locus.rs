//! Connectedness locus of `a T_16 + b` over a parameter rectangle, printed
//! as ASCII art. Connected parameters cluster inside the diamond
//! `|a| + |b|/2 <= 1`.

use orthojulia::dynamics::{locus::linspace, locus_scan, LocusFamily};

fn main() -> orthojulia::Result<()> {
    let a: Vec<f64> = linspace(-1.5, 1.5, 61).into_iter().filter(|&a| a != 0.0).collect();
    let b = linspace(-3.0, 3.0, 41);
    let scan = locus_scan(&LocusFamily::ScaledChebyshev, 16, &a, &b, 256)?;
    for j in (0..b.len()).rev() {
        let row: String = (0..a.len()).map(|i| if scan.is_connected_at(i, j) { '#' } else { '.' }).collect();
        println!("{:>5.2} {row}", b[j]);
    }
    println!("connected fraction {:.3}", scan.fraction_connected());
    Ok(())
}
