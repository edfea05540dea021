use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MIN_CELLS: usize = 8;

/// A rectangle of the plane cut into `nx × ny` cells.
///
/// Row `0` is the top row (largest imaginary part) so masks map directly to
/// image rows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if xmax <= xmin || ymax <= ymin {
            return Err(Error::invalid("grid bounds must satisfy xmax > xmin and ymax > ymin"));
        }
        if nx < MIN_CELLS || ny < MIN_CELLS {
            return Err(Error::invalid(format!("grid needs at least {MIN_CELLS} cells per axis")));
        }
        Ok(Self { xmin, xmax, ymin, ymax, nx, ny })
    }

    /// `[-half, half]^2` centered at `center` with `n × n` cells.
    pub fn square(center: Complex64, half: f64, n: usize) -> Result<Self> {
        Self::new(center.re - half, center.re + half, center.im - half, center.im + half, n, n)
    }

    /// Square cells: the shorter axis is widened symmetrically so that the
    /// longer one gets `res` cells.
    pub fn with_square_cells(xmin: f64, xmax: f64, ymin: f64, ymax: f64, res: usize) -> Result<Self> {
        let (w, h) = (xmax - xmin, ymax - ymin);
        if !(w > 0.0 && h > 0.0) {
            return Err(Error::invalid("grid bounds must satisfy xmax > xmin and ymax > ymin"));
        }
        if w >= h {
            let pad = (w - h) / 2.0;
            Self::new(xmin, xmax, ymin - pad, ymax + pad, res, res)
        } else {
            let pad = (h - w) / 2.0;
            Self::new(xmin - pad, xmax + pad, ymin, ymax, res, res)
        }
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / self.ny as f64
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Center of the cell in column `i`, row `j`.
    #[inline]
    pub fn cell_center(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.xmin + (i as f64 + 0.5) * self.dx(), self.ymax - (j as f64 + 0.5) * self.dy())
    }

    pub fn centers(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.cell_center(i, j)))
    }
}

/// Row-major boolean raster over a [`GridSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMask {
    nx: usize,
    ny: usize,
    bits: Vec<bool>,
}

impl BitMask {
    pub fn new(nx: usize, ny: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), nx * ny, "mask size does not match its dimensions");
        Self { nx, ny, bits }
    }

    pub fn empty(nx: usize, ny: usize) -> Self {
        Self { nx, ny, bits: vec![false; nx * ny] }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.nx + i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[j * self.nx + i] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_clear(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// `(i, j)` of every set cell, row by row.
    pub fn set_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(k, _)| (k % self.nx, k / self.nx))
    }
}
