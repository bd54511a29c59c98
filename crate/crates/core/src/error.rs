use thiserror::Error;

/// Errors raised by the exact algebra layer.
///
/// Every variant has a stable string code (see [`Error::code`]) which report
/// writers use in failure lists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic polynomial has an irreducible factor of degree {degree} over the rationals")]
    RationalSpectrumRequired { degree: usize },
    #[error("integer root search bound {bound} exceeds the supported limit")]
    RootBoundExceeded { bound: u64 },
    #[error("matrices {first} and {second} do not commute")]
    NotCommuting { first: usize, second: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("bracket closure exceeded the dimension cap of {cap}")]
    ClosureExplosion { cap: usize },
    #[error("structure constants violate {0}")]
    InvalidStructure(String),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("generators {first} and {second} of the abelian subalgebra do not commute")]
    NotAbelian { first: usize, second: usize },
    #[error("abelian generators are linearly dependent")]
    DependentGenerators,
    #[error("element is not expressible in the algebra basis")]
    NotInAlgebra,
    #[error("functional is not a root of the system")]
    NotARoot,
    #[error("no detected conjugating root exists")]
    NoWitness,
    #[error("functionals are negatively proportional")]
    NegativelyProportional,
    #[error("logarithm does not lie in the span of the admissible classes")]
    NotInSpan,
    #[error("ordering incompatible with the admissible set: {0}")]
    OrderIncompatible(String),
    #[error("no rational sl2-triple through the given element")]
    NoRationalTriple,
    #[error("Weyl element does not normalize the split subalgebra")]
    NotNormalizing,
    #[error("word leg is not supported in the admissible set")]
    NotSupported,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("element does not lie in the Cartan subalgebra")]
    NotInCartan,
    #[error("declared subspace is not an ideal")]
    NotAnIdeal,
    #[error("operation requires an sl(n) ambient algebra")]
    UnsupportedAmbient,
    #[error("two-form is not invariant under the representation")]
    NotInvariantForm,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::RationalSpectrumRequired { .. } => "RationalSpectrumRequired",
            Error::RootBoundExceeded { .. } => "RootBoundExceeded",
            Error::NotCommuting { .. } => "NotCommuting",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::ClosureExplosion { .. } => "ClosureExplosion",
            Error::InvalidStructure(_) => "InvalidStructure",
            Error::NotARepresentation(_) => "NotARepresentation",
            Error::NotAbelian { .. } => "NotAbelian",
            Error::DependentGenerators => "DependentGenerators",
            Error::NotInAlgebra => "NotInAlgebra",
            Error::NotARoot => "NotARoot",
            Error::NoWitness => "NoWitness",
            Error::NegativelyProportional => "NegativelyProportional",
            Error::NotInSpan => "NotInSpan",
            Error::OrderIncompatible(_) => "OrderIncompatible",
            Error::NoRationalTriple => "NoRationalTriple",
            Error::NotNormalizing => "NotNormalizing",
            Error::NotSupported => "NotSupported",
            Error::NotUnipotent => "NotUnipotent",
            Error::NotInCartan => "NotInCartan",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::UnsupportedAmbient => "UnsupportedAmbient",
            Error::NotInvariantForm => "NotInvariantForm",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
