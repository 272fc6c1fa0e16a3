use thiserror::Error;

/// Every failure the library reports. Conditions that are answers rather than
/// faults (a non-square, a non-cyclic input) are returned as values instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars live in incompatible field towers")]
    IncompatibleTowers,
    #[error("field tower depth limit {limit} exceeded")]
    TowerDepthExceeded { limit: usize },
    #[error("extension unavailable: {0}")]
    ExtensionUnavailable(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("potential lies in Sym^4 V (mu = 0)")]
    SymmetricPotential,
    #[error("point is not on the point scheme")]
    NotOnE,
    #[error("third point is not determined (rank-0 system)")]
    AmbiguousThirdPoint,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("input is not homogeneous of degree {expected} (term at {pos} has degree {found})")]
    NonHomogeneous {
        expected: usize,
        found: usize,
        pos: usize,
    },
}

impl Error {
    /// Depth overflow while searching for a root is, to callers, an
    /// unreachable extension.
    pub(crate) fn into_extension(self, what: &str) -> Error {
        match self {
            Error::TowerDepthExceeded { limit } => {
                Error::ExtensionUnavailable(format!("{what} needs a tower deeper than {limit}"))
            }
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
