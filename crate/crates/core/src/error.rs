use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance mismatch: {left} vs {right}")]
    InstanceMismatch { left: String, right: String },
    #[error("operation not applicable to instance {ring}: {reason}")]
    NotApplicable { ring: String, reason: String },
    #[error("zero input")]
    ZeroInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("need at least two terms, got {0}")]
    FewerThanTwoTerms(usize),
    #[error("bounded search exhausted its budget: {0}")]
    SearchExhausted(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("negative coefficient at byte {0}: additively reduced instances have no negatives")]
    NegativeCoefficient(usize),
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("unsupported instance for exhaustive search: {0}")]
    UnsupportedInstance(String),
    #[error("degree {degree} exceeds search bound {bound}")]
    DegreeBoundExceeded { degree: i64, bound: i64 },
    #[error("coefficient mass {mass} exceeds search bound {bound}")]
    MassBoundExceeded { mass: String, bound: u64 },
    #[error("condition not met: {0}")]
    ConditionNotMet(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("split cannot be represented as head + tail: {0}")]
    UnrepresentableSplit(String),
    #[error("budget exhausted after {0} candidates")]
    BudgetExhausted(u64),
    #[error("witness rewrite window exhausted: {0}")]
    RewriteWindowExhausted(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InstanceMismatch { .. } => "InstanceMismatch",
            Error::NotApplicable { .. } => "NotApplicable",
            Error::ZeroInput => "ZeroInput",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::FewerThanTwoTerms(_) => "FewerThanTwoTerms",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::Inconclusive(_) => "Inconclusive",
            Error::Parse { .. } => "Parse",
            Error::NegativeCoefficient(_) => "NegativeCoefficient",
            Error::UnknownVariable { .. } => "UnknownVariable",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::UnsupportedInstance(_) => "UnsupportedInstance",
            Error::DegreeBoundExceeded { .. } => "DegreeBoundExceeded",
            Error::MassBoundExceeded { .. } => "MassBoundExceeded",
            Error::ConditionNotMet(_) => "ConditionNotMet",
            Error::InvalidSeries(_) => "InvalidSeries",
            Error::UnrepresentableSplit(_) => "UnrepresentableSplit",
            Error::BudgetExhausted(_) => "BudgetExhausted",
            Error::RewriteWindowExhausted(_) => "RewriteWindowExhausted",
            Error::Defect(_) => "Defect",
        }
    }

    /// True for the "could not decide within budget" family.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::SearchExhausted(_)
                | Error::Inconclusive(_)
                | Error::BudgetExhausted(_)
                | Error::RewriteWindowExhausted(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
