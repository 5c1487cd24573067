use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group too large: {what} = {value} exceeds cap {cap}")]
    GroupTooLarge { what: &'static str, value: u64, cap: u64 },
    #[error("element is not a member of the group")]
    NotInGroup,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not p-integral")]
    NotIntegral,
    #[error("valuation inconclusive at maximum precision {0}")]
    Inconclusive(usize),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("no Dixon prime below search bound {0}")]
    NoDixonPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("support mismatch between class functions")]
    SupportMismatch,
    #[error("element is not central in the subgroup")]
    NotCentral,
    #[error("element is not a p-element")]
    NotPElement,
    #[error("input is not fixed by the subgroup")]
    NotFixed,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("table verification failed: {0}")]
    TableVerification(String),
    /// A computed object violated an identity the theory guarantees.
    #[error("internal verification failure: {0}")]
    Internal(String),
    /// A claim of the theory failed on a concrete instance.
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 for failed verification, 2 for inconclusive
    /// precision or caps, 3 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Counterexample(_) | Error::Internal(_) | Error::TableVerification(_) => 1,
            Error::Inconclusive(_) | Error::InsufficientPrecision(_) | Error::CapExceeded(_) => 2,
            _ => 3,
        }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
