//! Closed-form algebra for the Gaussian family `f(z) = A e^{-a|z-c|^2 + i d·z}`:
//! convolutions, p-norms, sharp Young (Beckner–Brascamp–Lieb) constants and the
//! basic complex Gaussian integral. Everything here is exact up to floating
//! point and serves as the analytic oracle for the grid engine.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extended::Ext;

/// An isotropic Gaussian in `n` real dimensions (n = 1 on the line, n = 2 on
/// the complex plane), with an optional linear phase in the 1-D case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFn {
    pub amplitude: C64,
    /// Width parameter a > 0 in `e^{-a|z-c|^2}`.
    pub width: f64,
    pub centre: C64,
    /// Real dimensions: 1 or 2.
    pub dims: u8,
    /// Linear phase `e^{i delta x}`; only supported for dims = 1.
    pub linear_phase: f64,
}

impl GaussianFn {
    pub fn new(amplitude: C64, width: f64, centre: C64, dims: u8) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::BadParameter(format!("gaussian width {width} <= 0")));
        }
        if dims != 1 && dims != 2 {
            return Err(Error::BadParameter(format!("gaussian dims {dims} not in {{1, 2}}")));
        }
        Ok(GaussianFn { amplitude, width, centre, dims, linear_phase: 0.0 })
    }

    /// The paper's standard family `f_a(z) = e^{-a|z|^2}` on the plane.
    pub fn standard(a: f64) -> Self {
        GaussianFn::new(C64::new(1.0, 0.0), a, C64::new(0.0, 0.0), 2).expect("a > 0")
    }

    pub fn centred_1d(amplitude: f64, a: f64) -> Self {
        GaussianFn::new(C64::new(amplitude, 0.0), a, C64::new(0.0, 0.0), 1).expect("a > 0")
    }

    pub fn with_linear_phase(mut self, delta: f64) -> Result<Self> {
        if self.dims != 1 && delta != 0.0 {
            return Err(Error::BadParameter("linear phase only supported for dims = 1".into()));
        }
        self.linear_phase = delta;
        Ok(self)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let d = z - self.centre;
        let mut v = self.amplitude * (-self.width * d.norm_sqr()).exp();
        if self.linear_phase != 0.0 {
            v *= C64::new(0.0, self.linear_phase * z.re).exp();
        }
        v
    }
}

/// `f_a * f_b` in closed form: per real dimension the prefactor is
/// `sqrt(pi/(a+b))` and the width contracts to `ab/(a+b)`; centres add.
pub fn gauss_convolve(f: &GaussianFn, g: &GaussianFn) -> Result<GaussianFn> {
    if f.dims != g.dims {
        return Err(Error::BadParameter(format!(
            "convolution dimension mismatch: {} vs {}",
            f.dims, g.dims
        )));
    }
    if (f.linear_phase - g.linear_phase).abs() > 0.0 {
        return Err(Error::BadParameter("convolution requires matching linear phases".into()));
    }
    let (a, b) = (f.width, g.width);
    let prefactor = (PI / (a + b)).powf(f.dims as f64 / 2.0);
    Ok(GaussianFn {
        amplitude: f.amplitude * g.amplitude * prefactor,
        width: a * b / (a + b),
        centre: f.centre + g.centre,
        dims: f.dims,
        linear_phase: f.linear_phase,
    })
}

/// `||f||_p = |A| (pi/(p a))^{n/2p}`; `p = inf` returns the peak `|A|`.
pub fn gauss_pnorm(f: &GaussianFn, p: Ext) -> Result<f64> {
    let p = p.norm_exponent()?;
    let peak = f.amplitude.norm();
    Ok(match p {
        Ext::Inf => peak,
        Ext::Finite(p) => peak * (PI / (p * f.width)).powf(f.dims as f64 / (2.0 * p)),
    })
}

/// Sharp Young constant `C_p = sqrt(p^{1/p} / p'^{1/p'})`, with `C_1 = C_inf = 1`.
pub fn bbl_constant(p: Ext) -> Result<f64> {
    let p = p.norm_exponent()?;
    Ok(match p {
        Ext::Inf | Ext::Finite(1.0) => 1.0,
        Ext::Finite(v) => {
            let vp = v / (v - 1.0);
            (v.powf(1.0 / v) / vp.powf(1.0 / vp)).sqrt()
        }
    })
}

/// Exponents `(p, q, r)` with `1 + 1/r = 1/p + 1/q`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentTriple {
    pub p: Ext,
    pub q: Ext,
    pub r: Ext,
}

impl ExponentTriple {
    pub fn new(p: Ext, q: Ext, r: Ext) -> Result<Self> {
        for e in [p, q, r] {
            e.norm_exponent()?;
        }
        let residual = 1.0 + r.recip() - p.recip() - q.recip();
        if residual.abs() > 1e-12 {
            return Err(Error::BadExponentTriple(residual));
        }
        Ok(ExponentTriple { p, q, r })
    }

    /// Solves for r given p and q.
    pub fn from_pq(p: Ext, q: Ext) -> Result<Self> {
        let inv_r = p.recip() + q.recip() - 1.0;
        if inv_r < -1e-12 {
            return Err(Error::BadExponentTriple(inv_r));
        }
        let r = if inv_r.abs() <= 1e-15 { Ext::Inf } else { Ext::Finite(1.0 / inv_r) };
        ExponentTriple::new(p, q, r)
    }
}

/// Right-hand side of the sharp Young inequality,
/// `(C_p C_q / C_r)^n ||f||_p ||g||_q`.
pub fn bbl_bound(f_norm: f64, g_norm: f64, t: ExponentTriple, n: u8) -> Result<f64> {
    let c = bbl_constant(t.p)? * bbl_constant(t.q)? / bbl_constant(t.r)?;
    Ok(c.powi(n as i32) * f_norm * g_norm)
}

/// `int e^{-a x^2 + b x + c} dx = sqrt(pi/a) e^{b^2/4a + c}` for Re(a) > 0,
/// principal square root.
pub fn gauss_integral_1d(a: C64, b: C64, c: C64) -> Result<C64> {
    if !(a.re > 0.0) {
        return Err(Error::BadGaussianExponent(a.re));
    }
    Ok((C64::new(PI, 0.0) / a).sqrt() * (b * b / (4.0 * a) + c).exp())
}
