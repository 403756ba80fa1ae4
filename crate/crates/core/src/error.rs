use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("unsupported built-in scheme `{0}`")]
    UnsupportedBuiltin(String),
    #[error("not a Hopf ideal: {0}")]
    NotHopfIdeal(String),
    #[error("ideal is the whole algebra (zero quotient)")]
    ZeroQuotient,
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("scheme mismatch: {0}")]
    SchemeMismatch(String),
    #[error("extension does not split the scheme; residue degree {required_degree} required")]
    ExtensionDoesNotSplit { required_degree: u32 },
    #[error("group scheme is not infinitesimal")]
    NotInfinitesimal,
    #[error("size cap exceeded: {needed} > {cap}")]
    SizeCapExceeded { needed: usize, cap: usize },
    #[error("polynomial carrier requires a degree bound")]
    MissingDegreeBound,
    #[error("element is not invariant: {0}")]
    NotInvariant(String),
    #[error("carrier is not a field")]
    CarrierNotAField,
    #[error("integral space has dimension {0}, expected 1")]
    DimensionNotOne(usize),
    #[error("constructed map is zero: {0}")]
    ZeroMap(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
