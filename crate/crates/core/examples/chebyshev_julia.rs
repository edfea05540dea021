//! Shifted Chebyshev polynomials `T_n + 1/2`, with `T_n` monic on [-2, 2].
//! The filled Julia sets hug [-2, 2] while each of them is disconnected.

use num_complex::Complex64;
use orthojulia::dynamics::{filled_julia_raster_with, is_connected, GridSpec, LocusFamily, RasterMode};
use orthojulia::geometry::{hausdorff, raster_to_points, PointSet, SetKind};

fn main() -> orthojulia::Result<()> {
    let grid = GridSpec::new(-2.8, 2.8, -2.8, 2.8, 512, 512)?;
    let segment = PointSet::segment(Complex64::new(-2.0, 0.0), Complex64::new(2.0, 0.0), 4097)?;
    for n in [4, 8, 16, 32] {
        let base = LocusFamily::ScaledChebyshev.base(n)?;
        let p = LocusFamily::ScaledChebyshev.member(&base, 1.0, 0.5)?;
        let r = filled_julia_raster_with(&p, grid, 64, RasterMode::Covering)?;
        let k = raster_to_points(&r, SetKind::K)?;
        println!("n = {n:>2}  d_H(K, [-2,2]) = {:.4}  connected: {}", hausdorff(&k, &segment), is_connected(&p, 256)?);
    }
    Ok(())
}
