use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in field")]
    DivisionByZero,

    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u32),

    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("rings support at most {max} variables, got {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("quotient by the zero polynomial")]
    ZeroDivisor,

    #[error("unit ideal has no scheme")]
    UnitIdeal,

    #[error("expected Krull dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("containment failed: {0}")]
    Containment(String),

    #[error("codimension mismatch: expected {expected}, found {found}")]
    CodimMismatch { expected: usize, found: usize },

    #[error("lemma identity violated: {0}")]
    LemmaIdentityViolated(String),

    #[error("Gorenstein witness required: {0}")]
    GorensteinWitnessRequired(String),

    #[error("genericity failure after {attempts} attempts ({what}); seeds {seeds:?}")]
    Genericity {
        what: String,
        attempts: usize,
        seeds: Vec<u64>,
    },

    #[error("verification `{check}` failed: {detail}")]
    Verification { check: String, detail: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn verification(check: &str, detail: impl Into<String>) -> Self {
        Error::Verification {
            check: check.to_string(),
            detail: detail.into(),
        }
    }

    /// True for failures that signal unlucky random choices rather than bugs.
    pub fn is_genericity(&self) -> bool {
        matches!(self, Error::Genericity { .. })
    }
}
