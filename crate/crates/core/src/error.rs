use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state descriptor: {0}")]
    BadDescriptor(String),

    #[error("fock level {level} exceeds cutoff n_max = {n_max}")]
    LevelAboveCutoff { level: usize, n_max: usize },

    #[error("mixture weights sum to {sum}, expected 1")]
    BadMixtureWeights { sum: f64 },

    #[error("invalid parameter: {0}")]
    BadParameter(String),

    #[error("unsupported ordering s = {0}; P-function regime (Re(s) > 0) is not representable on a grid")]
    UnsupportedOrdering(f64),

    #[error("smoothing requires Re(s) < Re(t), got s = {s}, t = {t}")]
    BadSmoothingOrder { s: f64, t: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid too small for order s: |chi| = {boundary:.3e} at the boundary (need < {limit:.1e})")]
    CharBoundaryDecay { boundary: f64, limit: f64 },

    #[error("state/cutoff inconsistency: Husimi sample {value:.3e} below -1e-9")]
    NegativeHusimi { value: f64 },

    #[error("exponent triple violates 1 + 1/r = 1/p + 1/q (residual {0:.3e})")]
    BadExponentTriple(f64),

    #[error("p-norm exponent must lie in [1, inf], got {0}")]
    BadNormExponent(f64),

    #[error("gaussian integral requires Re(a) > 0, got {0}")]
    BadGaussianExponent(f64),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
