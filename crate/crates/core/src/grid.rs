//! Uniform square grids over the complex plane and sampled phase-space
//! fields, with midpoint-rule quadrature and Richardson-style error
//! estimates from 2x coarsening.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extended::Ext;

/// Square grid `[-R, R]^2` sampled at `n x n` cell centres, spacing `h = 2R/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub half_extent: f64,
    pub points_per_axis: usize,
}

impl PhaseGrid {
    pub fn new(half_extent: f64, points_per_axis: usize) -> Result<Self> {
        if !(half_extent > 0.0) {
            return Err(Error::BadParameter(format!("grid extent {half_extent} must be > 0")));
        }
        if points_per_axis < 16 || points_per_axis % 2 != 0 {
            return Err(Error::BadParameter(format!(
                "points per axis {points_per_axis} must be even and >= 16"
            )));
        }
        Ok(PhaseGrid { half_extent, points_per_axis })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / self.points_per_axis as f64
    }

    /// Cell-centre coordinate of index `i` along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_extent + (i as f64 + 0.5) * self.spacing()
    }

    pub fn point(&self, i_re: usize, i_im: usize) -> C64 {
        C64::new(self.coord(i_re), self.coord(i_im))
    }

    pub fn len(&self) -> usize {
        self.points_per_axis * self.points_per_axis
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell weight for the midpoint rule.
    pub fn cell_area(&self) -> f64 {
        self.spacing() * self.spacing()
    }
}

/// Real-valued samples of a phase-space function `Phi^{(s)}` on a [`PhaseGrid`].
/// Storage is row-major over (re, im): `idx = i_re * n + i_im`.
#[derive(Debug, Clone)]
pub struct PhaseSpaceField {
    pub grid: PhaseGrid,
    pub values: Vec<f64>,
    /// Ordering parameter s (real, in [-1, 0]).
    pub order: f64,
    pub state_tag: String,
    /// Largest imaginary residue discarded when taking the real part.
    pub max_imag: f64,
    /// Samples clipped to zero by the negative-Husimi policy.
    pub clipped: usize,
}

impl PhaseSpaceField {
    pub fn value(&self, i_re: usize, i_im: usize) -> f64 {
        self.values[i_re * self.grid.points_per_axis + i_im]
    }

    /// Midpoint-rule integral of the field.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_area()
    }

    /// `(sum |v|^p h^2)^{1/p}` for finite p, refined sup for `p = inf`,
    /// with a coarse-grid error estimate.
    pub fn pnorm(&self, p: Ext) -> Result<(f64, f64)> {
        let p = p.norm_exponent()?;
        match p {
            Ext::Inf => Ok(self.sup_norm()),
            Ext::Finite(p) => {
                let h2 = self.grid.cell_area();
                let fine: f64 =
                    self.values.iter().map(|v| v.abs().powf(p)).sum::<f64>() * h2;
                let coarse = self.coarse_psum(p);
                let value = fine.powf(1.0 / p);
                let err = (value - coarse.powf(1.0 / p)).abs() + 1e-12;
                Ok((value, err))
            }
        }
    }

    /// Sum of |block mean|^p on the 2x-coarsened grid.
    fn coarse_psum(&self, p: f64) -> f64 {
        let n = self.grid.points_per_axis;
        let m = n / 2;
        let mut sum = 0.0;
        for bi in 0..m {
            for bj in 0..m {
                let mut v = 0.0;
                for di in 0..2 {
                    for dj in 0..2 {
                        v += self.value(2 * bi + di, 2 * bj + dj);
                    }
                }
                sum += (v / 4.0).abs().powf(p);
            }
        }
        sum * 4.0 * self.grid.cell_area()
    }

    /// Grid max of |v| plus a parabolic refinement at the argmax cell
    /// (log-space when the stencil is positive, so Gaussian peaks are exact).
    fn sup_norm(&self) -> (f64, f64) {
        let n = self.grid.points_per_axis;
        let mut best = 0.0;
        let (mut bi, mut bj) = (0usize, 0usize);
        for i in 0..n {
            for j in 0..n {
                let v = self.value(i, j).abs();
                if v > best {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if bi == 0 || bj == 0 || bi == n - 1 || bj == n - 1 || best == 0.0 {
            return (best, 1e-12);
        }
        let stencil = [
            self.value(bi - 1, bj).abs(),
            best,
            self.value(bi + 1, bj).abs(),
            self.value(bi, bj - 1).abs(),
            self.value(bi, bj + 1).abs(),
        ];
        let log_ok = stencil.iter().all(|&v| v > 0.0);
        let peak_1d = |lm: f64, l0: f64, lp: f64| -> f64 {
            let denom = lm - 2.0 * l0 + lp;
            if denom >= -1e-300 {
                // not locally concave; keep the grid value
                return 0.0;
            }
            -(lm - lp) * (lm - lp) / (8.0 * denom)
        };
        let refined = if log_ok {
            let l = stencil.map(f64::ln);
            (l[1] + peak_1d(l[0], l[1], l[2]) + peak_1d(l[3], l[1], l[4])).exp()
        } else {
            stencil[1]
                + peak_1d(stencil[0], stencil[1], stencil[2])
                + peak_1d(stencil[3], stencil[1], stencil[4])
        };
        let refined = refined.max(best);
        ((refined), (refined - best).abs() + 1e-12)
    }

    /// `pi h^2 sum f1 f2`, the overlap formula for order-0 fields.
    pub fn product_trace(&self, other: &PhaseSpaceField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("product trace needs a shared grid".into()));
        }
        if self.order != 0.0 || other.order != 0.0 {
            return Err(Error::GridMismatch(format!(
                "product trace is an order-0 identity, got s = {}, {}",
                self.order, other.order
            )));
        }
        Ok(PI
            * self.grid.cell_area()
            * self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a * b)
                .sum::<f64>())
    }

    /// Max absolute pointwise deviation from another field on the same grid.
    pub fn max_abs_diff(&self, other: &PhaseSpaceField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("field comparison needs a shared grid".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Complex samples of the s-ordered characteristic function on a xi-plane grid.
#[derive(Debug, Clone)]
pub struct CharacteristicField {
    pub grid: PhaseGrid,
    pub values: Vec<C64>,
    pub order: f64,
    pub state_tag: String,
}

impl CharacteristicField {
    pub fn value(&self, i_re: usize, i_im: usize) -> C64 {
        self.values[i_re * self.grid.points_per_axis + i_im]
    }

    /// Largest |chi| on the outermost ring of cells.
    pub fn boundary_max(&self) -> f64 {
        let n = self.grid.points_per_axis;
        let mut max = 0.0f64;
        for i in 0..n {
            for j in [0, n - 1] {
                max = max.max(self.value(i, j).norm());
                max = max.max(self.value(j, i).norm());
            }
        }
        max
    }
}
