use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kernel K needs at least one argument")]
    EmptyKernel,

    #[error("kernel K argument must be positive, got {0}")]
    NonPositiveKernelArgument(u64),

    #[error("multinomial parts sum to {sum}, expected {n}")]
    MultinomialMismatch { n: u64, sum: u64 },

    #[error("cannot parse multi-index {0:?}")]
    ParseMultiIndex(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown auxiliary variable {0:?}")]
    UnknownVariable(String),

    #[error("duplicate auxiliary variable {0:?}")]
    DuplicateVariable(String),

    #[error("no correlator <{}> available in genus {genus}", fmt_tau(.d))]
    CorrelatorMissing { genus: u32, d: Vec<u32> },

    #[error("unstable moduli space: genus {genus} with {n} marked points")]
    Unstable { genus: u32, n: i64 },

    #[error("dimension mismatch: degree {degree} but dimension {dimension}")]
    DimensionMismatch { degree: i64, dimension: i64 },

    #[error("intersection number for {m} is not a nonnegative integer: {value}")]
    NonIntegral { m: String, value: String },

    #[error("CohFT normalization violated: {0}")]
    Normalization(String),

    #[error("linear system: {0}")]
    LinearSystem(String),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_tau(d: &[u32]) -> String {
    d.iter()
        .map(|x| format!("tau_{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}
