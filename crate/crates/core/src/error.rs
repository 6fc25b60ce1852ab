use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("zero coordinate vector in factor {factor}")]
    ZeroVector { factor: usize },

    #[error("semistable and stable loci differ; strictly semistable profile {witness}")]
    NotCoprimeStable { witness: String },

    #[error("truncation degree {got} too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("semistable series has a nonzero coefficient in degree {degree} above the quotient dimension")]
    SeriesNotPolynomial { degree: usize },

    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,

    #[error("refinement violated: profiles {first} and {second} share an epsilon-stratum but have parents {first_parent} and {second_parent}")]
    RefinementViolation {
        first: String,
        second: String,
        first_parent: String,
        second_parent: String,
    },

    #[error("no generic epsilon found: {reason}; witness {witness}")]
    NoGenericEpsilon { reason: String, witness: String },

    #[error("recursion measure did not decrease descending into {submodel}")]
    RecursionMeasure { submodel: String },

    #[error("{beta} is not in the index set")]
    BetaNotInIndexSet { beta: String },

    #[error("weights of factor {factor} are not symmetric under the Weyl reflection")]
    AsymmetricWeights { factor: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("destabilizing flag is not unique: {0}")]
    FlagNotUnique(String),

    #[error("refined labels do not partition: {0}")]
    PartitionViolation(String),
}

impl Error {
    /// Mathematical precondition failures, as opposed to malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotCoprimeStable { .. }
                | Error::TruncationTooSmall { .. }
                | Error::SeriesNotPolynomial { .. }
                | Error::NotDivisible
                | Error::RefinementViolation { .. }
                | Error::NoGenericEpsilon { .. }
                | Error::RecursionMeasure { .. }
                | Error::BetaNotInIndexSet { .. }
                | Error::AsymmetricWeights { .. }
                | Error::FlagNotUnique(_)
                | Error::PartitionViolation(_)
        )
    }

    /// Stable kebab-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid-input",
            Error::RankMismatch { .. } => "rank-mismatch",
            Error::ZeroVector { .. } => "zero-vector",
            Error::NotCoprimeStable { .. } => "not-coprime-stable",
            Error::TruncationTooSmall { .. } => "truncation-too-small",
            Error::SeriesNotPolynomial { .. } => "series-not-polynomial",
            Error::NotDivisible => "not-divisible",
            Error::RefinementViolation { .. } => "refinement-violation",
            Error::NoGenericEpsilon { .. } => "no-generic-epsilon",
            Error::RecursionMeasure { .. } => "recursion-measure",
            Error::BetaNotInIndexSet { .. } => "beta-not-in-index-set",
            Error::AsymmetricWeights { .. } => "asymmetric-weights",
            Error::Unsupported(_) => "unsupported",
            Error::FlagNotUnique(_) => "flag-not-unique",
            Error::PartitionViolation(_) => "partition-violation",
        }
    }

    /// The offending profile, index or degree, when the error carries one.
    pub fn witness(&self) -> Option<String> {
        match self {
            Error::NotCoprimeStable { witness } | Error::NoGenericEpsilon { witness, .. } => Some(witness.clone()),
            Error::RefinementViolation { first, second, .. } => Some(format!("{first} {second}")),
            Error::BetaNotInIndexSet { beta } => Some(beta.clone()),
            Error::SeriesNotPolynomial { degree } => Some(degree.to_string()),
            Error::AsymmetricWeights { factor } | Error::ZeroVector { factor } => Some(factor.to_string()),
            Error::RecursionMeasure { submodel } => Some(submodel.clone()),
            _ => None,
        }
    }
}
