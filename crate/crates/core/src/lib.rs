//! Phase-space distributions of truncated Fock-space states, entropic
//! localisation measures, and verification of the convolution-inequality
//! relations that connect them.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`fock`] — states and operators in a truncated photon-number basis;
//! * [`gaussian`] — closed-form Gaussian algebra (convolutions, p-norms,
//!   sharp Young constants) used as the analytic oracle;
//! * [`engine`] — sampling of Wigner / Husimi / general s-ordered functions
//!   on uniform grids, with two independent computational paths;
//! * [`measures`] — Rényi–Wehrl entropies, the Süßmann measure and
//!   non-classicality, evaluated from the sampled fields;
//! * [`inequality`] — machine-checkable verdicts for each entropic relation.

pub mod battery;
pub mod engine;
pub mod error;
pub mod extended;
pub mod fock;
pub mod gaussian;
pub mod grid;
pub mod inequality;
pub mod measures;

pub use error::{Error, Result};
pub use extended::Ext;
pub use fock::{DensityMatrix, FockCutoff, SqueezeParam, StateKind};
pub use grid::{PhaseGrid, PhaseSpaceField};
