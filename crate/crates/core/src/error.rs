use thiserror::Error;

/// Errors raised by the symbolic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is not an invertible scalar: {0}")]
    NonUnitConstantTerm(String),
    #[error("unsupported Eisenstein weight {0} (expected 2, 4 or 6)")]
    UnsupportedWeight(u32),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("leading coefficient is not invertible: {0}")]
    NonUnitLeading(String),
    #[error("requested depth {requested} exceeds configured depth {max}")]
    DepthExceeded { requested: usize, max: usize },
    #[error("insufficient accuracy: {0}")]
    InsufficientAccuracy(String),
    #[error("form degree {0} exceeds the cap of 2")]
    DegreeCapExceeded(usize),
    #[error("no closed relative 1-form found at this truncation: {0}")]
    NoSolutionAtOrder(String),
    #[error("a dθ∧dθ term survived the reduction: {0}")]
    ResidualRelativeTwoForm(String),
    #[error("simple-pole term remains at z^-1 ({0}); no basis element carries it")]
    ResidueObstruction(String),
    #[error("regular remainder {0} is not in the span of the basis")]
    NotInSpan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
