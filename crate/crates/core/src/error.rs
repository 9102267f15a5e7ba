use thiserror::Error;

use crate::formula::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("value `{value}` is not in the range of `{variable}`")]
    RangeError { variable: String, value: String },

    #[error("assignment {assignment} is not total: missing `{variable}`")]
    PartialAssignment { assignment: String, variable: String },

    #[error("function for `{variable}`: {reason}")]
    InvalidFunction { variable: String, reason: String },

    #[error("assignment {assignment} violates the law for `{variable}`")]
    CompatibilityViolation { assignment: String, variable: String },

    #[error("the law for `{0}` is constant")]
    ConstantFunction(String),

    #[error("causal graph has a cycle: {}", .0.join(" -> "))]
    CyclicGraph(Vec<String>),

    #[error("inconsistent intervention on `{0}`")]
    InconsistentIntervention(String),

    #[error("probability is undefined on an empty multiteam")]
    EmptyModel,

    #[error("signatures do not match")]
    SignatureMismatch,

    #[error("a signature is required to expand `{0}`")]
    SignatureRequired(String),

    #[error("unsupported node: {0}")]
    UnsupportedNode(String),

    #[error("the two causal multiteams are not rescalings of each other")]
    NotRescalings,

    #[error("the class is empty")]
    EmptyClass,

    #[error("enumeration would visit about {0} models, above the configured cap")]
    BudgetExceeded(u128),

    #[error("value `{value}` of `{variable}` is not a decimal number")]
    NonNumericValue { variable: String, value: String },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid input: {0}")]
    Format(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    /// Errors that stem from malformed text rather than from a model that
    /// fails validation.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Format(_))
    }
}
