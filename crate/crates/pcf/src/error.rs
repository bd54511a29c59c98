use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("family is not simultaneously bounded by 1+eps in any scaled triangular basis")]
    NotSlowFamily,
    #[error("points are not on a common stable or unstable leaf")]
    NotOnCommonLeaf,
    #[error("potential did not converge within {budget} iterations")]
    ConvergenceBudgetExceeded { budget: usize },
    #[error("cycle functional deviates from zero by {deviation:e}")]
    CycleObstruction { deviation: f64 },
    #[error("eigenline {line} is neutral for every generator")]
    NonRegular { line: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("generators do not have a common real eigenbasis")]
    ComplexSpectrum,
    #[error("twist norm {norm} is not below the threshold {threshold}")]
    SmallnessViolated { norm: f64, threshold: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("constants are not a twisted homomorphism")]
    IncompatibleConstants,
    #[error("path does not close up")]
    NotClosed,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSlowFamily => "NotSlowFamily",
            Error::NotOnCommonLeaf => "NotOnCommonLeaf",
            Error::ConvergenceBudgetExceeded { .. } => "ConvergenceBudgetExceeded",
            Error::CycleObstruction { .. } => "CycleObstruction",
            Error::NonRegular { .. } => "NonRegular",
            Error::InvalidAction(_) => "InvalidAction",
            Error::ComplexSpectrum => "ComplexSpectrum",
            Error::SmallnessViolated { .. } => "SmallnessViolated",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::IncompatibleConstants => "IncompatibleConstants",
            Error::NotClosed => "NotClosed",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
