//! Crate-wide error type.
//!
//! Every variant maps to a stable machine-readable name (the first token on
//! stderr when the CLI fails) and a process exit code: 2 for usage/validation
//! problems, 3 for numerical failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bias parameter D must be positive, got {0}")]
    NonPositiveBias(f64),

    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("unknown model label `{0}`")]
    UnknownModel(String),

    #[error("model `{label}` requires parameter `{name}` (pass -P {name}=...)")]
    MissingParameter { label: String, name: &'static str },

    #[error("model `{label}` is not supported here: {reason}")]
    UnsupportedModel { label: String, reason: String },

    #[error("no sign change found while bracketing {0}")]
    RootNotBracketed(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("grid is empty")]
    EmptyGrid,

    #[error("grid is not strictly increasing")]
    NonMonotoneGrid,

    #[error("grid point {0} lies outside the model domain")]
    DomainViolation(f64),

    #[error("grid too narrow: estimated tail mass {0:e} exceeds 1e-8")]
    GridTooNarrow(f64),

    #[error("potential is not finite on the grid at x = {0}")]
    SingularPotentialOnGrid(f64),

    #[error("eigensolver failed: {0}")]
    EigensolverFailure(String),

    #[error("requested {requested} levels but the grid supports at most {max}")]
    TooManyLevels { requested: usize, max: usize },

    #[error("invalid grid spec: {0}")]
    InvalidGridSpec(String),

    #[error("level {level} is not bound for {model}")]
    NoBoundState { level: usize, model: String },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("minimizer not bracketed: {0}")]
    MinimizerNotBracketed(String),

    // Bounds for levels above the first excited state require expanding the
    // trial state in an orthonormal basis, which this solver does not do.
    #[error(
        "variational level {0} unsupported: only n = 0 (even trial state) and \
         n = 1 (odd trial state) carry a guaranteed upper bound"
    )]
    VariationalLevelUnsupported(usize),

    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name; first token of the CLI error line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveBias(_) => "NonPositiveBias",
            Error::NonPositiveParameter { .. } => "NonPositiveParameter",
            Error::UnknownModel(_) => "UnknownModel",
            Error::MissingParameter { .. } => "MissingParameter",
            Error::UnsupportedModel { .. } => "UnsupportedModel",
            Error::RootNotBracketed(_) => "RootNotBracketed",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::EmptyGrid => "EmptyGrid",
            Error::NonMonotoneGrid => "NonMonotoneGrid",
            Error::DomainViolation(_) => "DomainViolation",
            Error::GridTooNarrow(_) => "GridTooNarrow",
            Error::SingularPotentialOnGrid(_) => "SingularPotentialOnGrid",
            Error::EigensolverFailure(_) => "EigensolverFailure",
            Error::TooManyLevels { .. } => "TooManyLevels",
            Error::InvalidGridSpec(_) => "InvalidGridSpec",
            Error::NoBoundState { .. } => "NoBoundState",
            Error::QuadratureFailure(_) => "QuadratureFailure",
            Error::MinimizerNotBracketed(_) => "MinimizerNotBracketed",
            Error::VariationalLevelUnsupported(_) => "VariationalLevelUnsupported",
            Error::Usage(_) => "UsageError",
            Error::Io(_) => "IoError",
        }
    }

    /// CLI exit code: 2 usage/validation, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RootNotBracketed(_)
            | Error::NoConvergence { .. }
            | Error::EigensolverFailure(_)
            | Error::QuadratureFailure(_)
            | Error::MinimizerNotBracketed(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
