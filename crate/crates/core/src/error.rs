use alloc::string::String;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field too large for exhaustive scan")]
    FieldTooLarge,
    #[error("mismatched fields")]
    FieldMismatch,
    #[error("mismatched ring contexts: {0}")]
    ContextMismatch(String),
    #[error("characteristic mismatch: expected {expected}, found {found}")]
    CharacteristicMismatch { expected: u64, found: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("monomial order is not degree-compatible")]
    NotDegreeCompatible,
    #[error("supply a cyclic A_n-model for localized modules")]
    LocalizedModule,
    #[error("prime too large for this presentation ({generators} generators, limit {limit})")]
    PrimeTooLarge { generators: usize, limit: usize },
    #[error("connection is not integrable: {0}")]
    NotIntegrable(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("computation budget exhausted")]
    BudgetExhausted,
    #[error("inconclusive rank")]
    InconclusiveRank,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

pub type Result<T> = core::result::Result<T, Error>;
