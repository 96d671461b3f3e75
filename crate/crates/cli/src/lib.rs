//! Library side of the `phasespace` binary: run configuration, command
//! implementations and field export, separated out so integration tests can
//! exercise the file formats directly.

pub mod commands;
pub mod config;
pub mod export;

#[derive(Debug)]
pub enum CliError {
    /// Exit 1: a verdict failed.
    Verification(String),
    /// Exit 2: bad config, flags or state descriptors.
    Config(String),
    /// Exit 3: numerical-validity failure inside the engine, or I/O.
    Numeric(String),
}

impl CliError {
    pub fn verification(msg: String) -> Self {
        CliError::Verification(msg)
    }

    pub fn config(msg: String) -> Self {
        CliError::Config(msg)
    }

    pub fn numeric(msg: String) -> Self {
        CliError::Numeric(msg)
    }

    /// Map engine errors to exit classes: validation-type errors are
    /// configuration errors (2), runtime numerics are validity errors (3).
    pub fn from_core(e: phasespace_core::Error) -> Self {
        use phasespace_core::Error as E;
        match e {
            E::BadDescriptor(_)
            | E::LevelAboveCutoff { .. }
            | E::BadMixtureWeights { .. }
            | E::BadParameter(_)
            | E::UnsupportedOrdering(_)
            | E::BadSmoothingOrder { .. }
            | E::BadExponentTriple(_)
            | E::BadNormExponent(_)
            | E::BadGaussianExponent(_) => CliError::Config(e.to_string()),
            E::GridMismatch(_)
            | E::CharBoundaryDecay { .. }
            | E::NegativeHusimi { .. }
            | E::Invalid(_) => CliError::Numeric(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Config(m) | CliError::Numeric(m) => m,
        }
    }
}
