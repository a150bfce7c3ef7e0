use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual modules; anything not listed here is a bug and panics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {0} exceeds the supported bound 16")]
    FieldTooLarge(u32),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration request exceeds truncation bound: {0}")]
    TruncationExceeded(String),
    #[error("site kind mismatch: {0}")]
    KindMismatch(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("set-valued data is not functorial: {0}")]
    NonFunctorialData(String),
    #[error("functors live on different sites: {0}")]
    SiteMismatch(String),
    #[error("site has no implemented duality: {0}")]
    UnsupportedSiteDuality(String),
    #[error("valid ranges do not overlap: {0}")]
    RangeMismatch(String),
    #[error("insufficient valid range: {0}")]
    InsufficientRange(String),
    #[error("subcategory is not complete in the required sense: {0}")]
    SubcategoryNotComplete(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("components do not form a natural transformation: {0}")]
    NotNatural(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
