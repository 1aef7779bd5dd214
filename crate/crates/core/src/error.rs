use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d = {0} is not squarefree (or is 0 or 1)")]
    NonSquarefree(i64),
    #[error("conductor must be a positive integer, got {0}")]
    BadConductor(i64),
    #[error("bad class vector: {0}")]
    BadClassVector(String),
    #[error("the zero ideal is not a fractional ideal")]
    ZeroIdeal,
    #[error("operands belong to different domains")]
    MixedDomains,
    #[error("ideal {0} must be integral and proper")]
    NotProper(String),
    #[error("{what} {value} exceeds the configured bound {cap}")]
    BoundExceeded {
        what: &'static str,
        value: String,
        cap: String,
    },
    #[error("ideal is not homogeneous: contained in {} maximal ideals [{}]", .0.len(), .0.join(", "))]
    NotHomog(Vec<String>),
    #[error("input element is a unit")]
    UnitInput,
    #[error("input element is zero")]
    ZeroInput,
    #[error("ideal {0} is not invertible for the chosen star operation")]
    NotInvertible(String),
    #[error("ideal {0} is not a {1}-ideal")]
    NotStarIdeal(String, char),
    #[error("invalid homogeneity certificate: {0}")]
    InvalidCertificate(String),
    #[error("sample must be nonempty")]
    EmptySample,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element does not belong to the domain: {0}")]
    NotInDomain(String),
}
