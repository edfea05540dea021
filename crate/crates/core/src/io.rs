//! CSV and PGM encodings of measures, sequences, rasters, scans and tables.
//!
//! Every file starts with provenance comments (`#` lines in CSV, PGM header
//! comments). Reals are written with 17 significant digits.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::dynamics::{JuliaApproximation, LocusScan};
use crate::error::{Error, Result};
use crate::geometry::ConvergenceTable;
use crate::measure::DiscreteMeasure;
use crate::orthopoly::OrthoSequence;
use crate::polynomial::Polynomial;

pub const PGM_ESCAPED: u8 = 0;
pub const PGM_INTERIOR: u8 = 128;
pub const PGM_BOUNDARY: u8 = 255;

/// Where a file came from. Written verbatim as comment lines.
#[derive(Clone, Debug, Default)]
pub struct Provenance {
    pub command: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
            format!("command: {}", self.command),
        ];
        if let Some(seed) = self.seed {
            out.push(format!("seed: {seed}"));
        }
        out
    }

    pub fn write_csv_comments<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for line in self.lines() {
            writeln!(w, "# {line}")?;
        }
        Ok(())
    }
}

/// Shortest form is not enough here: fixed 17 significant digits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_measure_csv<W: Write>(w: &mut W, mu: &DiscreteMeasure, prov: &Provenance) -> io::Result<()> {
    prov.write_csv_comments(w)?;
    writeln!(w, "re,im,weight")?;
    for (z, wt) in mu.nodes().iter().zip(mu.weights()) {
        writeln!(w, "{},{},{}", fmt_real(z.re), fmt_real(z.im), fmt_real(*wt))?;
    }
    Ok(())
}

/// One row per polynomial; rows of lower degree leave trailing fields empty.
pub fn write_polys_csv<W: Write>(w: &mut W, rows: &[(usize, f64, &Polynomial)], prov: &Provenance) -> io::Result<()> {
    prov.write_csv_comments(w)?;
    let width = rows.iter().map(|(_, _, p)| p.degree()).max().unwrap_or(0);
    let mut header = vec!["n".to_string(), "gamma".to_string()];
    for k in 0..=width {
        header.push(format!("c{k}_re"));
        header.push(format!("c{k}_im"));
    }
    writeln!(w, "{}", header.join(","))?;
    for (n, gamma, p) in rows {
        let mut fields = vec![n.to_string(), fmt_real(*gamma)];
        for c in p.coeffs() {
            fields.push(fmt_real(c.re));
            fields.push(fmt_real(c.im));
        }
        fields.resize(header.len(), String::new());
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_sequence_csv<W: Write>(w: &mut W, seq: &OrthoSequence, prov: &Provenance) -> io::Result<()> {
    let rows: Vec<_> = seq.polys().iter().zip(seq.gammas()).enumerate().map(|(n, (p, g))| (n, *g, p)).collect();
    write_polys_csv(w, &rows, prov)
}

/// Reads the rows written by [`write_sequence_csv`] as `(n, gamma, p_n)`.
pub fn read_sequence_csv(path: &Path) -> Result<Vec<(usize, f64, Polynomial)>> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    let mut seen_header = false;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            seen_header = true;
            if !line.starts_with("n,gamma") {
                return Err(Error::invalid(format!("{}: not a sequence file", path.display())));
            }
            continue;
        }
        let bad = || Error::invalid(format!("{}:{}: malformed row", path.display(), lineno + 1));
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 4 {
            return Err(bad());
        }
        let n: usize = fields[0].parse().map_err(|_| bad())?;
        let gamma: f64 = fields[1].parse().map_err(|_| bad())?;
        let values: Vec<f64> = fields[2..]
            .iter()
            .take_while(|f| !f.is_empty())
            .map(|f| f.parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if values.len() != 2 * (n + 1) {
            return Err(bad());
        }
        let coeffs = values.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        out.push((n, gamma, Polynomial::new(coeffs)?));
    }
    Ok(out)
}

/// Binary P5 raster: escaped 0, interior of K 128, J cells 255.
pub fn write_julia_pgm<W: Write>(w: &mut W, r: &JuliaApproximation, prov: &Provenance) -> io::Result<()> {
    let (nx, ny) = (r.grid.nx, r.grid.ny);
    let mut pixels = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            pixels.push(if r.j_mask.get(i, j) {
                PGM_BOUNDARY
            } else if r.k_mask.get(i, j) {
                PGM_INTERIOR
            } else {
                PGM_ESCAPED
            });
        }
    }
    write_pgm(w, nx, ny, &pixels, prov)
}

fn write_pgm<W: Write>(w: &mut W, nx: usize, ny: usize, pixels: &[u8], prov: &Provenance) -> io::Result<()> {
    writeln!(w, "P5")?;
    for line in prov.lines() {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "{nx} {ny}")?;
    writeln!(w, "255")?;
    w.write_all(pixels)
}

/// Sidecar text for a raster: grid bounds, escape radius, iteration budget.
pub fn write_raster_header<W: Write>(w: &mut W, r: &JuliaApproximation, prov: &Provenance) -> io::Result<()> {
    prov.write_csv_comments(w)?;
    let g = &r.grid;
    writeln!(w, "xmin {}", fmt_real(g.xmin))?;
    writeln!(w, "xmax {}", fmt_real(g.xmax))?;
    writeln!(w, "ymin {}", fmt_real(g.ymin))?;
    writeln!(w, "ymax {}", fmt_real(g.ymax))?;
    writeln!(w, "nx {}", g.nx)?;
    writeln!(w, "ny {}", g.ny)?;
    writeln!(w, "escape_radius {}", fmt_real(r.escape_radius))?;
    writeln!(w, "max_iter {}", r.max_iter)?;
    writeln!(w, "mode {}", r.mode)?;
    let (k, j) = r.counts();
    writeln!(w, "k_cells {k}")?;
    writeln!(w, "j_cells {j}")?;
    writeln!(w, "degree {}", r.poly.degree())?;
    Ok(())
}

/// Connected cells white; `b` increases upward.
pub fn write_locus_pgm<W: Write>(w: &mut W, scan: &LocusScan, prov: &Provenance) -> io::Result<()> {
    let (nx, ny) = (scan.a_values.len(), scan.b_values.len());
    let mut pixels = Vec::with_capacity(nx * ny);
    for j in (0..ny).rev() {
        for i in 0..nx {
            pixels.push(if scan.is_connected_at(i, j) { 255 } else { 0 });
        }
    }
    write_pgm(w, nx, ny, &pixels, prov)
}

pub fn write_locus_csv<W: Write>(w: &mut W, scan: &LocusScan, prov: &Provenance) -> io::Result<()> {
    prov.write_csv_comments(w)?;
    writeln!(w, "# family: {} n: {} max_iter: {}", scan.family, scan.n, scan.max_iter)?;
    writeln!(w, "a,b,connected")?;
    for (j, b) in scan.b_values.iter().enumerate() {
        for (i, a) in scan.a_values.iter().enumerate() {
            writeln!(w, "{},{},{}", fmt_real(*a), fmt_real(*b), u8::from(scan.is_connected_at(i, j)))?;
        }
    }
    Ok(())
}

pub fn write_table_csv<W: Write>(w: &mut W, table: &ConvergenceTable, prov: &Provenance) -> io::Result<()> {
    prov.write_csv_comments(w)?;
    writeln!(w, "n,d_semi_J,d_semi_K_hull,d_H_target")?;
    for row in &table.rows {
        let target = row.d_h_target.map(fmt_real).unwrap_or_default();
        writeln!(w, "{},{},{},{}", row.n, fmt_real(row.d_semi_j), fmt_real(row.d_semi_k_hull), target)?;
    }
    Ok(())
}
