use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("slot index {0} never appears in the sequence")]
    MissingIndex(usize),
    #[error("every slot index occurs at least twice; no distinguished position exists")]
    NoUniqueOccurrence,
    #[error("sequence entry {value} is outside 1..={k}")]
    OutOfRange { value: i64, k: usize },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("matrix entry at flat index {0} is not finite")]
    NonFinite(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("operator is zero")]
    ZeroOperator,
    #[error("operator has rank at most one")]
    RankTooLow,
    #[error("witness construction failed: {0}")]
    ConstructionFailed(String),
    #[error("map images are not consistent with a linear extension")]
    NotLinearConsistent,
    #[error("sampled quadratic-form identity and scalar characterization disagree: {0}")]
    InconsistentWithLemma(String),
    #[error("input vectors do not span the space")]
    SpanDeficient,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MissingIndex(_) => "MissingIndex",
            Error::NoUniqueOccurrence => "NoUniqueOccurrence",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::InvalidDescriptor(_) => "InvalidDescriptor",
            Error::NonFinite(_) => "NonFinite",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NoConvergence(_) => "NoConvergence",
            Error::ZeroOperator => "ZeroOperator",
            Error::RankTooLow => "RankTooLow",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::NotLinearConsistent => "NotLinearConsistent",
            Error::InconsistentWithLemma(_) => "InconsistentWithLemma",
            Error::SpanDeficient => "SpanDeficient",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
