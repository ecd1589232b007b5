use thiserror::Error;

/// Errors surfaced by the pipeline. Each variant names the stage that failed
/// so the command-line front end can map it to an exit status.
#[derive(Debug, Error)]
pub enum WalgError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("labels rejected: {0}")]
    InvalidLabels(String),

    #[error("solver undecided: {0}")]
    Undecided(String),

    #[error("internal invariant failed in {module}: {detail}")]
    Invariant { module: &'static str, detail: String },

    #[error("missing relation F({0},{1}) needed by the 1-dimensional system")]
    MissingRelation(usize, usize),
}

impl WalgError {
    pub fn invariant(module: &'static str, detail: impl Into<String>) -> Self {
        WalgError::Invariant {
            module,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, WalgError>;
