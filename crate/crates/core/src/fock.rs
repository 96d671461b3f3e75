//! Truncated Fock-space linear algebra: ladder, displacement and squeezing
//! operators, state constructors and the basic Hilbert-space functionals.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = -1e-10;

/// Basis `{|0>, ..., |n_max>}`, dimension `n_max + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockCutoff {
    pub n_max: usize,
}

impl FockCutoff {
    pub fn new(n_max: usize) -> Self {
        FockCutoff { n_max }
    }

    pub fn dim(self) -> usize {
        self.n_max + 1
    }
}

/// Default cutoff: keeps the tail mass of all battery states below 1e-10
/// for |alpha| <= 2, r <= 1, n_bar <= 2.
pub const DEFAULT_N_MAX: usize = 63;

/// Squeezing parameter `xi = r e^{i phi}`, r >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParam {
    pub r: f64,
    pub phi: f64,
}

impl SqueezeParam {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::BadParameter(format!("squeeze magnitude r = {r} must be >= 0")));
        }
        Ok(SqueezeParam { r, phi: phi.rem_euclid(2.0 * std::f64::consts::PI) })
    }

    pub fn xi(self) -> C64 {
        C64::from_polar(self.r, self.phi)
    }
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Annihilation and creation matrices with the top level truncated:
/// `a|n> = sqrt(n)|n-1>`, `a^dag |n> = sqrt(n+1)|n+1>`.
pub fn make_ladder_ops(cutoff: FockCutoff) -> (DMatrix<C64>, DMatrix<C64>) {
    let d = cutoff.dim();
    let mut a = DMatrix::<C64>::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    (a, adag)
}

/// Matrix elements of `D(beta) = e^{beta a^dag - beta^* a}` via the associated
/// Laguerre closed form, factorial ratios in log space. For m >= n,
/// `<m|D|n> = sqrt(n!/m!) beta^{m-n} e^{-|beta|^2/2} L_n^{(m-n)}(|beta|^2)`,
/// and the lower triangle follows from `<m|D|n> = <n|D(-beta)|m>^*`.
pub fn displacement_op(alpha: C64, cutoff: FockCutoff) -> DMatrix<C64> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        panic!("displacement amplitude must be finite");
    }
    if alpha.norm_sqr() > cutoff.n_max as f64 / 4.0 {
        log::warn!(
            "displacement |alpha|^2 = {:.3} exceeds n_max/4 = {:.3}; truncation unreliable",
            alpha.norm_sqr(),
            cutoff.n_max as f64 / 4.0
        );
    }
    let d = cutoff.dim();
    let x = alpha.norm_sqr();
    let envelope = (-x / 2.0).exp();
    let mut out = DMatrix::<C64>::zeros(d, d);
    // Diagonal offset k = m - n >= 0; recurrence in n for L_n^{(k)}(x).
    let mut beta_pow = C64::new(1.0, 0.0);
    let mut neg_conj_pow = C64::new(1.0, 0.0);
    for k in 0..d {
        let upper = beta_pow * envelope;
        let lower = neg_conj_pow * envelope;
        // s_n = sqrt(n!/(n+k)!), s_0 = e^{-ln(k!)/2}.
        let mut s = (-0.5 * ln_factorial(k)).exp();
        let mut l_prev = 0.0f64;
        let mut l = 1.0f64; // L_0^{(k)}
        for n in 0..d - k {
            let m = n + k;
            let elem = s * l;
            out[(m, n)] = upper * elem;
            if k > 0 {
                out[(n, m)] = lower * elem;
            }
            // advance recurrence to L_{n+1}^{(k)}
            let nf = n as f64;
            let l_next = ((2.0 * nf + 1.0 + k as f64 - x) * l - (nf + k as f64) * l_prev)
                / (nf + 1.0);
            l_prev = l;
            l = l_next;
            s *= ((nf + 1.0) / (nf + 1.0 + k as f64)).sqrt();
        }
        beta_pow *= alpha;
        neg_conj_pow *= -alpha.conj();
    }
    out
}

/// `S(xi) = e^{-(xi a^dag^2 - xi^* a^2)/2}` by matrix exponential of the
/// quadratic generator (scaling-and-squaring Padé).
pub fn squeezing_op(xi: SqueezeParam, cutoff: FockCutoff) -> DMatrix<C64> {
    if 3.0 * xi.r.sinh().powi(2) > cutoff.n_max as f64 {
        log::warn!(
            "squeezing r = {:.3} populates levels near the cutoff n_max = {}; truncation unreliable",
            xi.r,
            cutoff.n_max
        );
    }
    let (a, adag) = make_ladder_ops(cutoff);
    let half = C64::new(0.5, 0.0);
    let gen = (&a * &a) * (half * xi.xi().conj()) - (&adag * &adag) * (half * xi.xi());
    gen.exp()
}

/// State descriptors accepted by [`DensityMatrix::build`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateKind {
    Fock { m: usize },
    Coherent { alpha: [f64; 2] },
    SqueezedVacuum { r: f64, #[serde(default)] phi: f64 },
    /// `D(alpha) S(xi) |0>`.
    IdealSqueezed { alpha: [f64; 2], r: f64, #[serde(default)] phi: f64 },
    /// `S(xi) D(alpha) |0>`.
    TwoModeSqueezedOrder { alpha: [f64; 2], r: f64, #[serde(default)] phi: f64 },
    Thermal { n_bar: f64 },
    /// `|alpha> + e^{i theta} |-alpha>`, theta = 0 even, pi odd.
    Cat { alpha: [f64; 2], parity_phase: f64 },
    Mixture { components: Vec<(f64, StateKind)> },
}

impl StateKind {
    pub fn vacuum() -> Self {
        StateKind::Fock { m: 0 }
    }

    pub fn coherent(alpha: C64) -> Self {
        StateKind::Coherent { alpha: [alpha.re, alpha.im] }
    }

    pub fn odd_cat(alpha: f64) -> Self {
        StateKind::Cat { alpha: [alpha, 0.0], parity_phase: std::f64::consts::PI }
    }

    /// Compact text form, e.g. `fock:3`, `coherent:0.7+0.2i`, `squeezed:0.5`,
    /// `squeezed:0.5:1.2`, `thermal:1`, `cat:1.5:odd`, `vacuum`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::BadDescriptor(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let cplx = |t: &str| parse_complex(t).ok_or_else(bad);
        match parts.as_slice() {
            ["vacuum"] => Ok(StateKind::vacuum()),
            ["fock", m] => Ok(StateKind::Fock { m: m.parse().map_err(|_| bad())? }),
            ["coherent", a] => Ok(StateKind::coherent(cplx(a)?)),
            ["squeezed", r] | ["squeezed_vacuum", r] => {
                Ok(StateKind::SqueezedVacuum { r: num(r)?, phi: 0.0 })
            }
            ["squeezed", r, phi] | ["squeezed_vacuum", r, phi] => {
                Ok(StateKind::SqueezedVacuum { r: num(r)?, phi: num(phi)? })
            }
            ["ideal_squeezed", a, r] => {
                let alpha = cplx(a)?;
                Ok(StateKind::IdealSqueezed { alpha: [alpha.re, alpha.im], r: num(r)?, phi: 0.0 })
            }
            ["ideal_squeezed", a, r, phi] => {
                let alpha = cplx(a)?;
                Ok(StateKind::IdealSqueezed {
                    alpha: [alpha.re, alpha.im],
                    r: num(r)?,
                    phi: num(phi)?,
                })
            }
            ["two_mode_squeezed_order", a, r] => {
                let alpha = cplx(a)?;
                Ok(StateKind::TwoModeSqueezedOrder {
                    alpha: [alpha.re, alpha.im],
                    r: num(r)?,
                    phi: 0.0,
                })
            }
            ["two_mode_squeezed_order", a, r, phi] => {
                let alpha = cplx(a)?;
                Ok(StateKind::TwoModeSqueezedOrder {
                    alpha: [alpha.re, alpha.im],
                    r: num(r)?,
                    phi: num(phi)?,
                })
            }
            ["thermal", n] => Ok(StateKind::Thermal { n_bar: num(n)? }),
            ["cat", a] => Ok(StateKind::odd_cat(num(a)?)),
            ["cat", a, par] => {
                let alpha = cplx(a)?;
                let theta = match *par {
                    "odd" => std::f64::consts::PI,
                    "even" => 0.0,
                    other => num(other)?,
                };
                Ok(StateKind::Cat { alpha: [alpha.re, alpha.im], parity_phase: theta })
            }
            _ => Err(bad()),
        }
    }

    /// Canonical short tag used in reports and file names.
    pub fn tag(&self) -> String {
        match self {
            StateKind::Fock { m: 0 } => "vacuum".into(),
            StateKind::Fock { m } => format!("fock_{m}"),
            StateKind::Coherent { alpha } => format!("coherent_{}_{}", alpha[0], alpha[1]),
            StateKind::SqueezedVacuum { r, phi } => format!("squeezed_{r}_{phi}"),
            StateKind::IdealSqueezed { alpha, r, phi } => {
                format!("ideal_squeezed_{}_{}_{r}_{phi}", alpha[0], alpha[1])
            }
            StateKind::TwoModeSqueezedOrder { alpha, r, phi } => {
                format!("two_mode_squeezed_{}_{}_{r}_{phi}", alpha[0], alpha[1])
            }
            StateKind::Thermal { n_bar } => format!("thermal_{n_bar}"),
            StateKind::Cat { alpha, parity_phase } => {
                format!("cat_{}_{}_{parity_phase:.3}", alpha[0], alpha[1])
            }
            StateKind::Mixture { components } => {
                let inner: Vec<String> =
                    components.iter().map(|(w, k)| format!("{w}x{}", k.tag())).collect();
                format!("mix_{}", inner.join("_"))
            }
        }
    }
}

fn parse_complex(t: &str) -> Option<C64> {
    let t = t.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Some(C64::new(v, 0.0));
    }
    // forms: a+bi, a-bi, bi
    let t = t.strip_suffix('i')?;
    // find split point after the leading sign
    let idx = t[1..].rfind(['+', '-']).map(|i| i + 1);
    match idx {
        Some(i) => {
            let re = t[..i].parse::<f64>().ok()?;
            let im_str = &t[i..];
            let im = if im_str == "+" {
                1.0
            } else if im_str == "-" {
                -1.0
            } else {
                im_str.parse::<f64>().ok()?
            };
            Some(C64::new(re, im))
        }
        None => t.parse::<f64>().ok().map(|im| C64::new(0.0, im)),
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix in the truncated basis.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: DMatrix<C64>,
    cutoff: FockCutoff,
    tail_mass: f64,
    tag: String,
    truncation_warning: bool,
}

impl DensityMatrix {
    pub fn build(kind: &StateKind, cutoff: FockCutoff) -> Result<Self> {
        let (entries, tail, warn) = build_matrix(kind, cutoff)?;
        let mut rho = DensityMatrix {
            entries,
            cutoff,
            tail_mass: tail,
            tag: kind.tag(),
            truncation_warning: warn,
        };
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps a raw matrix (renormalising the trace) for operator-level tests
    /// and transformed states.
    pub fn from_matrix(mut entries: DMatrix<C64>, cutoff: FockCutoff, tag: &str) -> Result<Self> {
        let trace = entries.trace().re;
        if trace <= 0.0 {
            return Err(Error::Invalid("density matrix trace must be positive".into()));
        }
        entries /= C64::new(trace, 0.0);
        let mut rho = DensityMatrix {
            entries,
            cutoff,
            tail_mass: (1.0 - trace).abs(),
            tag: tag.to_string(),
            truncation_warning: false,
        };
        rho.validate()?;
        Ok(rho)
    }

    fn validate(&mut self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..i {
                if (self.entries[(i, j)] - self.entries[(j, i)].conj()).norm() > HERMITICITY_TOL {
                    return Err(Error::Invalid(format!(
                        "matrix not Hermitian at ({i},{j})"
                    )));
                }
            }
        }
        let trace = self.entries.trace().re;
        if (trace - 1.0).abs() > 1e-10 {
            self.entries /= C64::new(trace, 0.0);
        }
        // PSD: smallest eigenvalue of the Hermitised matrix.
        let herm = (&self.entries + self.entries.adjoint()) * C64::new(0.5, 0.0);
        let eigs = herm.symmetric_eigenvalues();
        let min = eigs.iter().copied().fold(f64::INFINITY, f64::min);
        if min < PSD_TOL {
            return Err(Error::Invalid(format!("matrix not PSD: min eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff.dim()
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn truncation_warning(&self) -> bool {
        self.truncation_warning
    }

    pub fn purity(&self) -> f64 {
        let mut sum = 0.0;
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                sum += (self.entries[(i, j)] * self.entries[(j, i)]).re;
            }
        }
        sum
    }

    /// `<n>` = Tr(rho n_hat).
    pub fn mean_occupation(&self) -> f64 {
        (0..self.dim()).map(|n| n as f64 * self.entries[(n, n)].re).sum()
    }

    /// `Tr(rho a)`.
    pub fn mean_alpha(&self) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for n in 1..self.dim() {
            sum += (n as f64).sqrt() * self.entries[(n, n - 1)];
        }
        sum
    }

    /// `Tr(rho a^2)`.
    pub fn mean_alpha_sq(&self) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for n in 2..self.dim() {
            sum += ((n * (n - 1)) as f64).sqrt() * self.entries[(n, n - 2)];
        }
        sum
    }

    /// Conjugate by a unitary: `U rho U^dag`.
    pub fn conjugated(&self, u: &DMatrix<C64>, tag: &str) -> Result<Self> {
        let m = u * &self.entries * u.adjoint();
        DensityMatrix::from_matrix(m, self.cutoff, tag)
    }

    /// Smallest level `n` with cumulative population `> 1 - eps`.
    pub fn effective_max_level(&self, eps: f64) -> usize {
        let mut cum = 0.0;
        for n in 0..self.dim() {
            cum += self.entries[(n, n)].re;
            if cum > 1.0 - eps {
                return n;
            }
        }
        self.cutoff.n_max
    }
}

fn pure_from_vector(psi: &DVector<C64>) -> (DMatrix<C64>, f64) {
    let norm_sq: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
    let tail = (1.0 - norm_sq).max(0.0);
    let scaled = psi / C64::new(norm_sq.sqrt(), 0.0);
    let d = scaled.len();
    let mut rho = DMatrix::<C64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            rho[(i, j)] = scaled[i] * scaled[j].conj();
        }
    }
    (rho, tail)
}

fn coherent_vector(alpha: C64, cutoff: FockCutoff) -> DVector<C64> {
    let d = cutoff.dim();
    let mut v = DVector::<C64>::zeros(d);
    let env = (-alpha.norm_sqr() / 2.0).exp();
    let mut term = C64::new(env, 0.0);
    for n in 0..d {
        v[n] = term;
        term *= alpha / C64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    v
}

fn build_matrix(kind: &StateKind, cutoff: FockCutoff) -> Result<(DMatrix<C64>, f64, bool)> {
    let d = cutoff.dim();
    match kind {
        StateKind::Fock { m } => {
            if *m > cutoff.n_max {
                return Err(Error::LevelAboveCutoff { level: *m, n_max: cutoff.n_max });
            }
            let mut rho = DMatrix::<C64>::zeros(d, d);
            rho[(*m, *m)] = C64::new(1.0, 0.0);
            Ok((rho, 0.0, false))
        }
        StateKind::Coherent { alpha } => {
            let a = C64::new(alpha[0], alpha[1]);
            let warn = a.norm_sqr() > cutoff.n_max as f64 / 4.0;
            let (rho, tail) = pure_from_vector(&coherent_vector(a, cutoff));
            Ok((rho, tail, warn))
        }
        StateKind::SqueezedVacuum { r, phi } => {
            let xi = SqueezeParam::new(*r, *phi)?;
            let warn = 3.0 * r.sinh().powi(2) > cutoff.n_max as f64;
            let s = squeezing_op(xi, cutoff);
            let psi = s.column(0).into_owned();
            let (rho, tail) = pure_from_vector(&psi);
            Ok((rho, tail, warn))
        }
        StateKind::IdealSqueezed { alpha, r, phi } => {
            let a = C64::new(alpha[0], alpha[1]);
            let xi = SqueezeParam::new(*r, *phi)?;
            let warn = a.norm_sqr() > cutoff.n_max as f64 / 4.0
                || 3.0 * r.sinh().powi(2) > cutoff.n_max as f64;
            let psi = (displacement_op(a, cutoff) * squeezing_op(xi, cutoff))
                .column(0)
                .into_owned();
            let (rho, tail) = pure_from_vector(&psi);
            Ok((rho, tail, warn))
        }
        StateKind::TwoModeSqueezedOrder { alpha, r, phi } => {
            let a = C64::new(alpha[0], alpha[1]);
            let xi = SqueezeParam::new(*r, *phi)?;
            let warn = a.norm_sqr() > cutoff.n_max as f64 / 4.0
                || 3.0 * r.sinh().powi(2) > cutoff.n_max as f64;
            let psi = (squeezing_op(xi, cutoff) * displacement_op(a, cutoff))
                .column(0)
                .into_owned();
            let (rho, tail) = pure_from_vector(&psi);
            Ok((rho, tail, warn))
        }
        StateKind::Thermal { n_bar } => {
            if !(*n_bar >= 0.0) {
                return Err(Error::BadParameter(format!("thermal n_bar = {n_bar} must be >= 0")));
            }
            let mut rho = DMatrix::<C64>::zeros(d, d);
            let mut mass = 0.0;
            for n in 0..d {
                // p_n = n_bar^n / (n_bar + 1)^{n+1}
                let p = if *n_bar == 0.0 {
                    if n == 0 { 1.0 } else { 0.0 }
                } else {
                    ((n as f64) * n_bar.ln() - (n as f64 + 1.0) * (n_bar + 1.0).ln()).exp()
                };
                rho[(n, n)] = C64::new(p, 0.0);
                mass += p;
            }
            let tail = 1.0 - mass;
            rho /= C64::new(mass, 0.0);
            Ok((rho, tail.max(0.0), false))
        }
        StateKind::Cat { alpha, parity_phase } => {
            let a = C64::new(alpha[0], alpha[1]);
            let warn = a.norm_sqr() > cutoff.n_max as f64 / 4.0;
            let phase = C64::new(0.0, *parity_phase).exp();
            let psi = coherent_vector(a, cutoff) + coherent_vector(-a, cutoff) * phase;
            let norm_sq: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
            if norm_sq < 1e-14 {
                return Err(Error::BadParameter("cat state has vanishing norm".into()));
            }
            // True continuum normalisation 2(1 + cos(theta) e^{-2|a|^2});
            // the difference to norm_sq is the truncated tail.
            let exact = 2.0 * (1.0 + parity_phase.cos() * (-2.0 * a.norm_sqr()).exp());
            let (rho, _) = pure_from_vector(&psi);
            Ok((rho, (exact - norm_sq).abs(), warn))
        }
        StateKind::Mixture { components } => {
            if components.is_empty() {
                return Err(Error::BadDescriptor("empty mixture".into()));
            }
            let wsum: f64 = components.iter().map(|(w, _)| w).sum();
            if (wsum - 1.0).abs() > 1e-12 {
                return Err(Error::BadMixtureWeights { sum: wsum });
            }
            let mut rho = DMatrix::<C64>::zeros(d, d);
            let mut tail = 0.0;
            let mut warn = false;
            for (w, sub) in components {
                if *w < 0.0 {
                    return Err(Error::BadParameter("mixture weight < 0".into()));
                }
                let (m, t, wn) = build_matrix(sub, cutoff)?;
                rho += m * C64::new(*w, 0.0);
                tail += w * t;
                warn |= wn;
            }
            let trace = rho.trace().re;
            rho /= C64::new(trace, 0.0);
            Ok((rho, tail + (1.0 - trace).abs(), warn))
        }
    }
}
