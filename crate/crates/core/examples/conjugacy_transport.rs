//! Transporting a sequence by an affine map `phi` conjugates its dynamics:
//! the filled Julia set of the transported polynomial is `phi` of the
//! original one.

use num_complex::Complex64;
use orthojulia::dynamics::{conjugate_pair, filled_julia_raster_with, GridSpec, RasterMode};
use orthojulia::geometry::{hausdorff, raster_to_points, SetKind};
use orthojulia::measure::AffineMap;
use orthojulia::Polynomial;

fn main() -> orthojulia::Result<()> {
    let q = Polynomial::from_real(&[-0.12, 0.0, 0.0, 1.0])?;
    let phi = AffineMap::new(Complex64::from_polar(1.3, 0.4), Complex64::new(0.5, 0.2))?;
    let (left, right) = conjugate_pair(&q, &phi)?;

    let original = filled_julia_raster_with(
        &left,
        GridSpec::square(Complex64::new(0.0, 0.0), 1.6, 512)?,
        128,
        RasterMode::Covering,
    )?;
    let moved = filled_julia_raster_with(
        &right,
        GridSpec::square(phi.apply(Complex64::new(0.0, 0.0)), 1.6 * 1.3, 512)?,
        128,
        RasterMode::Covering,
    )?;

    let image = raster_to_points(&original, SetKind::K)?.map(|z| phi.apply(z));
    let direct = raster_to_points(&moved, SetKind::K)?;
    let d = hausdorff(&image, &direct);
    println!("d_H(phi(K), K') = {d:.4}  ({:.2} cell diagonals)", d / moved.grid.cell_diagonal());
    Ok(())
}
