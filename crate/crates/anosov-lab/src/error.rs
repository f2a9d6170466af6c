use thiserror::Error;

/// Crate-wide error type. Exit codes in the CLI are derived from the
/// variant class: hypothesis violations map to 2, numeric failures to 3,
/// resource caps to 4.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("presentation grammar error: {0}")]
    Grammar(String),

    #[error("relator uses unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("enumeration memory cap exceeded; completed radius {completed}")]
    ResourceCap { completed: usize },

    #[error("non-finite entries while evaluating word `{word}`")]
    NumericOverflow { word: String },

    #[error("numeric iteration failed to converge: {0}")]
    NumericConvergence(String),

    #[error("ambiguous Cartan attractor: top gap {gap:.3e} below tolerance")]
    AmbiguousAttractor { gap: f64 },

    #[error("functional not positive on enumerated spectra: {violations} violations")]
    PositivityViolation { violations: usize },

    #[error("fit window too small: {0}")]
    WindowTooSmall(String),

    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("representation file error: {0}")]
    RepFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LabError {
    /// Process exit code for the CLI surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::HypothesisViolated(_) => 2,
            LabError::NumericOverflow { .. }
            | LabError::NumericConvergence(_)
            | LabError::AmbiguousAttractor { .. }
            | LabError::PositivityViolation { .. } => 3,
            LabError::ResourceCap { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
