use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeading,

    #[error("resultant of two zero polynomials is undefined")]
    BothZero,

    #[error("declaration rejected: {0}")]
    Declaration(String),

    #[error("element is not integral: {0}")]
    NotIntegral(String),

    #[error("element is not a unit (witness: {witness})")]
    NotAUnit { witness: String },

    #[error("(u, m) != 1: u = {u} is not coprime to m = {m}")]
    NotCoprime { u: String, m: BigInt },

    #[error("{0} is not squarefree")]
    NotSquarefree(BigInt),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(BigInt),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unit data missing: {0}")]
    MissingUnitData(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Variant name, used as a stable tag in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotMonic(_) => "NotMonic",
            Error::NonInvertibleLeading => "NonInvertibleLeading",
            Error::BothZero => "BothZero",
            Error::Declaration(_) => "Declaration",
            Error::NotIntegral(_) => "NotIntegral",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotSquarefree(_) => "NotSquarefree",
            Error::NotFundamental(_) => "NotFundamental",
            Error::ResourceLimit(_) => "ResourceLimit",
            Error::MissingUnitData(_) => "MissingUnitData",
            Error::Invariant(_) => "Invariant",
            Error::Precondition(_) => "Precondition",
            Error::HypothesisNotMet(_) => "HypothesisNotMet",
            Error::Input(_) => "Input",
        }
    }
}
