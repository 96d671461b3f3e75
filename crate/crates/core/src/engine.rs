//! Sampling of s-ordered phase-space functions on uniform grids.
//!
//! Two independent computational paths are provided:
//!
//! * a pointwise closed-form path using displaced-Fock (associated Laguerre)
//!   matrix elements — [`wigner_w`], [`husimi_q`];
//! * a characteristic-function path — [`char_function`] sampled on a xi-grid
//!   followed by the symplectic Fourier transform [`field_from_char`].
//!
//! Grid-level Gaussian smoothing between orderings is in [`order_smooth`].

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::DensityMatrix;
use crate::grid::{CharacteristicField, PhaseGrid, PhaseSpaceField};

const HUSIMI_CLIP: f64 = 1e-9;
const CHAR_BOUNDARY_LIMIT: f64 = 1e-10;

/// Precomputed per-state tables for the Laguerre-path evaluators: the upper
/// diagonals of rho and the factorial ratios `sqrt(n!/(n+k)!)`.
struct RhoTables {
    dim: usize,
    /// diag[k][n] = rho[n][n+k]; diagonals with negligible weight are None.
    diagonals: Vec<Option<Vec<C64>>>,
    /// sqrt_ratio[k][n] = sqrt(n!/(n+k)!)
    sqrt_ratio: Vec<Vec<f64>>,
}

impl RhoTables {
    fn new(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let m = rho.entries();
        let mut diagonals = Vec::with_capacity(d);
        let mut sqrt_ratio = Vec::with_capacity(d);
        for k in 0..d {
            let mut diag = Vec::with_capacity(d - k);
            let mut max = 0.0f64;
            for n in 0..d - k {
                let v = m[(n, n + k)];
                max = max.max(v.norm());
                diag.push(v);
            }
            diagonals.push(if max > 1e-16 { Some(diag) } else { None });

            let mut row = Vec::with_capacity(d - k);
            let mut s = 1.0f64;
            for j in 1..=k {
                s /= (j as f64).sqrt();
            }
            for n in 0..d - k {
                row.push(s);
                let nf = n as f64;
                s *= ((nf + 1.0) / (nf + 1.0 + k as f64)).sqrt();
            }
            sqrt_ratio.push(row);
        }
        RhoTables { dim: d, diagonals, sqrt_ratio }
    }

    /// `Tr(rho D(beta))` (parity = false) or `Tr(rho D(beta) Pi)` (parity =
    /// true), via the associated-Laguerre closed form for `<m|D(beta)|n>`.
    fn trace_d(&self, beta: C64, parity: bool) -> C64 {
        let x = beta.norm_sqr();
        let envelope = (-x / 2.0).exp();
        let mut acc = C64::new(0.0, 0.0);
        let mut beta_pow = C64::new(1.0, 0.0);
        for k in 0..self.dim {
            if let Some(diag) = &self.diagonals[k] {
                let ratios = &self.sqrt_ratio[k];
                let kf = k as f64;
                let mut l_prev = 0.0f64;
                let mut l = 1.0f64;
                let mut sum = C64::new(0.0, 0.0);
                let mut sign = 1.0f64;
                if k == 0 {
                    for (n, rho_nn) in diag.iter().enumerate() {
                        let elem = l;
                        if parity {
                            sum += rho_nn * (sign * elem);
                            sign = -sign;
                        } else {
                            sum += rho_nn * elem;
                        }
                        let nf = n as f64;
                        let l_next = ((2.0 * nf + 1.0 - x) * l - nf * l_prev) / (nf + 1.0);
                        l_prev = l;
                        l = l_next;
                    }
                    acc += sum * envelope;
                } else {
                    // pair (n, n+k) and (n+k, n) combined:
                    //   parity: 2 Re(rho_{n,n+k} beta^k) * (-1)^n * s * L
                    //   plain:  rho_{n,n+k} beta^k + (-1)^k conj(rho_{n,n+k} beta^k)
                    let minus_k = if k % 2 == 0 { 1.0 } else { -1.0 };
                    for (n, rho_up) in diag.iter().enumerate() {
                        let elem = ratios[n] * l;
                        let t = rho_up * beta_pow;
                        if parity {
                            sum += C64::new(2.0 * t.re * elem * sign, 0.0);
                            sign = -sign;
                        } else {
                            sum += (t + t.conj() * minus_k) * elem;
                        }
                        let nf = n as f64;
                        let l_next =
                            ((2.0 * nf + 1.0 + kf - x) * l - (nf + kf) * l_prev) / (nf + 1.0);
                        l_prev = l;
                        l = l_next;
                    }
                    acc += sum * envelope;
                }
            }
            beta_pow *= beta;
        }
        acc
    }

    /// `<alpha| rho |alpha>` via the coherent-state coefficient vector.
    fn coherent_expectation(&self, alpha: C64) -> f64 {
        let d = self.dim;
        let mut v = Vec::with_capacity(d);
        let env = (-alpha.norm_sqr() / 2.0).exp();
        let mut term = C64::new(env, 0.0);
        for n in 0..d {
            v.push(term);
            term *= alpha / C64::new(((n + 1) as f64).sqrt(), 0.0);
        }
        let mut acc = 0.0;
        for k in 0..d {
            if let Some(diag) = &self.diagonals[k] {
                if k == 0 {
                    for (n, rho_nn) in diag.iter().enumerate() {
                        acc += rho_nn.re * v[n].norm_sqr();
                    }
                } else {
                    let mut sum = C64::new(0.0, 0.0);
                    for (n, rho_up) in diag.iter().enumerate() {
                        sum += rho_up * v[n].conj() * v[n + k];
                    }
                    acc += 2.0 * sum.re;
                }
            }
        }
        acc
    }
}

/// First and second Husimi (anti-normally ordered) moments of the state:
/// centre `mu = <a>` and the covariance of (Re alpha, Im alpha) under Q.
pub struct QMoments {
    pub centre: C64,
    pub var_max: f64,
    pub var_min: f64,
}

pub fn q_moments(rho: &DensityMatrix) -> QMoments {
    let mu = rho.mean_alpha();
    let c1 = rho.mean_occupation() + 1.0 - mu.norm_sqr();
    let c2 = rho.mean_alpha_sq() - mu * mu;
    let var_max = 0.5 * (c1 + c2.norm());
    let var_min = 0.5 * (c1 - c2.norm());
    QMoments { centre: mu, var_max, var_min }
}

/// Auto grid sizing: `R = max(6, |centre| + 8.5 sigma_max)` with `sigma_max`
/// the largest Husimi standard deviation. Tails of every supported field are
/// then below ~1e-12 at the boundary, including q < 1 Rényi integrands.
pub fn auto_grid(rho: &DensityMatrix, points_per_axis: usize) -> Result<PhaseGrid> {
    let m = q_moments(rho);
    let half_extent = (m.centre.norm() + 8.5 * m.var_max.sqrt()).max(6.0);
    PhaseGrid::new(half_extent, points_per_axis)
}

/// `Q(alpha) = <alpha|rho|alpha>/pi`, sampled pointwise. Samples below
/// `-1e-9` are rejected; small negatives are clipped to 0 and counted.
pub fn husimi_q(rho: &DensityMatrix, grid: &PhaseGrid) -> Result<PhaseSpaceField> {
    let tables = RhoTables::new(rho);
    let n = grid.points_per_axis;
    let mut values = vec![0.0; grid.len()];
    let mut clipped = 0usize;
    for i in 0..n {
        for j in 0..n {
            let q = tables.coherent_expectation(grid.point(i, j)) / PI;
            values[i * n + j] = if q < 0.0 {
                if q < -HUSIMI_CLIP {
                    return Err(Error::NegativeHusimi { value: q });
                }
                clipped += 1;
                0.0
            } else {
                q
            };
        }
    }
    Ok(PhaseSpaceField {
        grid: *grid,
        values,
        order: -1.0,
        state_tag: rho.tag().to_string(),
        max_imag: 0.0,
        clipped,
    })
}

/// Wigner function via the displaced-parity expansion,
/// `W(alpha) = (2/pi) Tr(rho D(2 alpha) Pi)`, with displaced-Fock matrix
/// elements in closed form (Laguerre path).
pub fn wigner_w(rho: &DensityMatrix, grid: &PhaseGrid) -> Result<PhaseSpaceField> {
    let tables = RhoTables::new(rho);
    let n = grid.points_per_axis;
    let mut values = vec![0.0; grid.len()];
    let mut max_imag = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let t = tables.trace_d(grid.point(i, j) * 2.0, true);
            values[i * n + j] = 2.0 / PI * t.re;
            max_imag = max_imag.max((2.0 / PI * t.im).abs());
        }
    }
    Ok(PhaseSpaceField {
        grid: *grid,
        values,
        order: 0.0,
        state_tag: rho.tag().to_string(),
        max_imag,
        clipped: 0,
    })
}

/// s-ordered characteristic function `chi_s(xi) = Tr(rho D(xi)) e^{s|xi|^2/2}`
/// on a xi-plane grid. Re(s) must be <= 0.
pub fn char_function(rho: &DensityMatrix, s: C64, grid: &PhaseGrid) -> Result<CharacteristicField> {
    if s.re > 0.0 {
        return Err(Error::UnsupportedOrdering(s.re));
    }
    let tables = RhoTables::new(rho);
    let n = grid.points_per_axis;
    let mut values = vec![C64::new(0.0, 0.0); grid.len()];
    for i in 0..n {
        for j in 0..n {
            let xi = grid.point(i, j);
            values[i * n + j] = tables.trace_d(xi, false) * (s * xi.norm_sqr() * 0.5).exp();
        }
    }
    Ok(CharacteristicField {
        grid: *grid,
        values,
        order: s.re,
        state_tag: rho.tag().to_string(),
    })
}

/// One-dimensional transform `T[z]_b = sum_j z_j e^{+-2 pi i (j+c)(b+c)/N}`
/// with the half-cell offset `c = -(N-1)/2`, via FFT plus twiddles.
fn offset_dft(
    planner: &mut FftPlanner<f64>,
    rows: &mut [Vec<C64>],
    forward: bool,
) {
    let n = rows[0].len();
    let c = -((n as f64 - 1.0) / 2.0);
    let sign = if forward { -1.0 } else { 1.0 };
    let fft = if forward { planner.plan_fft_forward(n) } else { planner.plan_fft_inverse(n) };
    let pre: Vec<C64> = (0..n)
        .map(|j| C64::from_polar(1.0, sign * 2.0 * PI * j as f64 * c / n as f64))
        .collect();
    let post: Vec<C64> = (0..n)
        .map(|b| C64::from_polar(1.0, sign * 2.0 * PI * c * (b as f64 + c) / n as f64))
        .collect();
    for row in rows.iter_mut() {
        for (v, p) in row.iter_mut().zip(&pre) {
            *v *= p;
        }
        fft.process(row);
        for (v, p) in row.iter_mut().zip(&post) {
            *v *= p;
        }
    }
}

/// Symplectic Fourier transform of the characteristic function,
/// `Phi(alpha) = (1/pi^2) int chi(xi) e^{-(xi alpha^* - xi^* alpha)} d^2 xi`,
/// discretised on the dual grid with `h_alpha = pi / (N h_xi)`.
pub fn field_from_char(chi: &CharacteristicField) -> Result<PhaseSpaceField> {
    let boundary = chi.boundary_max();
    if boundary > CHAR_BOUNDARY_LIMIT {
        return Err(Error::CharBoundaryDecay { boundary, limit: CHAR_BOUNDARY_LIMIT });
    }
    let n = chi.grid.points_per_axis;
    let h_xi = chi.grid.spacing();
    let h_out = PI / (n as f64 * h_xi);
    let out_grid = PhaseGrid::new(h_out * n as f64 / 2.0, n)?;

    // Phi[a][b] = (h_xi^2/pi^2) sum_{j,k} chi[j][k] e^{2 i u_j y_b} e^{-2 i v_k x_a}
    // with u_j y_b = pi (j+c)(b+c)/N and v_k x_a likewise.
    let mut planner = FftPlanner::<f64>::new();

    // inner transform over k (the Im(xi) index) for each fixed j: forward sign
    let mut rows: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|k| chi.value(j, k)).collect())
        .collect();
    offset_dft(&mut planner, &mut rows, true);
    // rows[j][a] now holds sum_k; transpose to columns over j and apply the
    // inverse-sign transform, pairing j with the output Im(alpha) index b.
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|a| (0..n).map(|j| rows[j][a]).collect())
        .collect();
    offset_dft(&mut planner, &mut cols, false);

    let scale = h_xi * h_xi / (PI * PI);
    let mut values = vec![0.0; out_grid.len()];
    let mut max_imag = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let v = cols[a][b] * scale;
            values[a * n + b] = v.re;
            max_imag = max_imag.max(v.im.abs());
        }
    }
    Ok(PhaseSpaceField {
        grid: out_grid,
        values,
        order: chi.order,
        state_tag: chi.state_tag.clone(),
        max_imag,
        clipped: 0,
    })
}

/// Smallest xi-plane radius at which `|chi_s|` falls below 1e-13, probed on
/// rays from the origin.
pub fn char_decay_radius(rho: &DensityMatrix, s: f64) -> f64 {
    let tables = RhoTables::new(rho);
    let angles = 48;
    let mut radius = 4.0;
    'outer: while radius < 240.0 {
        for t in 0..angles {
            let theta = 2.0 * PI * t as f64 / angles as f64;
            let xi = C64::from_polar(radius, theta);
            let v = tables.trace_d(xi, false).norm() * (s * xi.norm_sqr() * 0.5).exp();
            if v > 1e-13 {
                radius += 1.0;
                continue 'outer;
            }
        }
        return radius;
    }
    radius
}

/// Characteristic-function path for the full field: sizes a xi-grid from the
/// state's decay radius, samples `chi_s` and transforms. The output grid is
/// the dual grid, generally finer than the direct-path default.
pub fn field_via_char(rho: &DensityMatrix, s: f64) -> Result<PhaseSpaceField> {
    if s > 0.0 {
        return Err(Error::UnsupportedOrdering(s));
    }
    let r_xi = char_decay_radius(rho, s) + 1.0;
    let m = q_moments(rho);
    let r_out = (m.centre.norm() + 8.5 * m.var_max.sqrt()).max(6.0);
    // dual-grid constraint: N >= 4 R_out R_xi / pi
    let mut n = (4.0 * r_out * r_xi / PI).ceil() as usize;
    n = n.next_multiple_of(16).max(64);
    let grid = PhaseGrid::new(r_xi, n)?;
    let chi = char_function(rho, C64::new(s, 0.0), &grid)?;
    field_from_char(&chi)
}

/// Gaussian smoothing from ordering t down to s < t:
/// `Phi^{(s)} = (2/(pi(t-s))) Phi^{(t)} * f_{2/(t-s)}`, evaluated spectrally
/// with zero padding to 2N per axis.
pub fn order_smooth(field: &PhaseSpaceField, s: f64) -> Result<PhaseSpaceField> {
    let t = field.order;
    if s >= t {
        return Err(Error::BadSmoothingOrder { s, t });
    }
    let n = field.grid.points_per_axis;
    let h = field.grid.spacing();
    let m = 2 * n;
    let width = 2.0 / (t - s);
    let scale = 2.0 / (PI * (t - s)) * h * h;

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);

    // kernel with origin at index 0, wrapped negative displacements
    let mut kernel = vec![C64::new(0.0, 0.0); m * m];
    for di in 0..m {
        let dx = if di <= n { di as f64 } else { di as f64 - m as f64 } * h;
        for dj in 0..m {
            let dy = if dj <= n { dj as f64 } else { dj as f64 - m as f64 } * h;
            kernel[di * m + dj] = C64::new((-width * (dx * dx + dy * dy)).exp() * scale, 0.0);
        }
    }
    let mut padded = vec![C64::new(0.0, 0.0); m * m];
    for i in 0..n {
        for j in 0..n {
            padded[i * m + j] = C64::new(field.value(i, j), 0.0);
        }
    }
    let fft2 = |data: &mut Vec<C64>, forward: bool| {
        let plan = if forward { &fwd } else { &inv };
        for row in data.chunks_mut(m) {
            plan.process(row);
        }
        // transpose, transform, transpose back
        let mut t = vec![C64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for j in 0..m {
                t[j * m + i] = data[i * m + j];
            }
        }
        for row in t.chunks_mut(m) {
            plan.process(row);
        }
        for i in 0..m {
            for j in 0..m {
                data[i * m + j] = t[j * m + i];
            }
        }
    };
    fft2(&mut kernel, true);
    fft2(&mut padded, true);
    for (a, b) in padded.iter_mut().zip(kernel.iter()) {
        *a *= b;
    }
    fft2(&mut padded, false);
    let norm = 1.0 / (m * m) as f64;

    let mut values = vec![0.0; n * n];
    let mut max_imag = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let v = padded[i * m + j] * norm;
            values[i * n + j] = v.re;
            max_imag = max_imag.max(v.im.abs());
        }
    }
    Ok(PhaseSpaceField {
        grid: field.grid,
        values,
        order: s,
        state_tag: field.state_tag.clone(),
        max_imag,
        clipped: 0,
    })
}

/// Direct O(N^4) convolution; correctness oracle for [`order_smooth`] on
/// small grids.
pub fn order_smooth_direct(field: &PhaseSpaceField, s: f64) -> Result<PhaseSpaceField> {
    let t = field.order;
    if s >= t {
        return Err(Error::BadSmoothingOrder { s, t });
    }
    let n = field.grid.points_per_axis;
    let h = field.grid.spacing();
    let width = 2.0 / (t - s);
    let scale = 2.0 / (PI * (t - s)) * h * h;
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for bi in 0..n {
                let dx = (i as f64 - bi as f64) * h;
                for bj in 0..n {
                    let dy = (j as f64 - bj as f64) * h;
                    acc += field.value(bi, bj) * (-width * (dx * dx + dy * dy)).exp();
                }
            }
            values[i * n + j] = acc * scale;
        }
    }
    Ok(PhaseSpaceField {
        grid: field.grid,
        values,
        order: s,
        state_tag: field.state_tag.clone(),
        max_imag: 0.0,
        clipped: 0,
    })
}
