//! Filled Julia sets of `z^n + c` shrink onto the unit circle as `n` grows.
//! Writes a PGM raster per degree into `./out/multibrot` and prints the
//! Hausdorff distances to the circle and to the closed disk.

use num_complex::Complex64;
use orthojulia::dynamics::{filled_julia_raster_with, GridSpec, RasterMode};
use orthojulia::geometry::{convergence_table, convex_hull, LimitTarget, PointSet, SetKind};
use orthojulia::io::{write_julia_pgm, Provenance};
use orthojulia::Polynomial;

fn main() -> orthojulia::Result<()> {
    let c = Complex64::new(0.5, 0.0);
    let grid = GridSpec::new(-1.5, 1.5, -1.5, 1.5, 512, 512)?;
    let out = std::path::Path::new("out/multibrot");
    std::fs::create_dir_all(out)?;

    let mut rasters = Vec::new();
    for n in [4, 8, 16, 32] {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = c;
        coeffs[n] = Complex64::new(1.0, 0.0);
        let r = filled_julia_raster_with(&Polynomial::new(coeffs)?, grid, 64, RasterMode::Covering)?;
        let mut file = std::io::BufWriter::new(std::fs::File::create(out.join(format!("julia_n{n}.pgm")))?);
        write_julia_pgm(&mut file, &r, &Provenance::new(format!("multibrot_convergence n={n}")))?;
        rasters.push((n, r));
    }

    let circle = PointSet::circle(Complex64::new(0.0, 0.0), 1.0, 4096)?;
    let hull = convex_hull(&circle)?;
    let disk = PointSet::new(grid.centers().filter(|z| z.norm() <= 1.0).collect())?;
    let limit = LimitTarget { set: disk, against: SetKind::K };
    let table = convergence_table(&circle, &hull, &rasters, Some(&limit))?;
    println!("{:>3} {:>9} {:>9} {:>9}", "n", "d_J", "d_K_hull", "d_disk");
    for row in &table.rows {
        println!("{:>3} {:>9.4} {:>9.4} {:>9.4}", row.n, row.d_semi_j, row.d_semi_k_hull, row.d_h_target.unwrap());
    }
    Ok(())
}
