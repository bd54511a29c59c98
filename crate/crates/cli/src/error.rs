use thiserror::Error;

/// The scenario could not be read or is malformed (exit code 2).
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("malformed scenario: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid scenario: {0}")]
    Invalid(String),
}

/// Failure of one analysis, recorded in the report (exit code 1).
#[derive(Debug, Clone, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Core(#[from] rigidkit_core::Error),
    #[error(transparent)]
    Pcf(#[from] rigidkit_pcf::Error),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl AnalysisError {
    pub fn code(&self) -> &'static str {
        match self {
            AnalysisError::Core(e) => e.code(),
            AnalysisError::Pcf(e) => e.code(),
            AnalysisError::MissingInput(_) => "MissingInput",
            AnalysisError::CheckFailed(_) => "CheckFailed",
        }
    }
}
