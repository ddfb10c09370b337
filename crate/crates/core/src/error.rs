use thiserror::Error;

/// Errors raised by polynomial, matrix and factorization operations.
#[derive(Error, Debug)]
pub enum Error {
    #[error("ambient variable sets differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("division requires at least one divisor")]
    EmptyDivisorList,
    #[error("divisor polynomial is zero")]
    ZeroDivisor,
    #[error("all inputs are zero")]
    AllInputsZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("module element lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("minor level {level} out of range 1..={max}")]
    MinorLevel { level: usize, max: usize },
    #[error("all minors of level {level} vanish (level exceeds rank)")]
    LevelExceedsRank { level: usize },
    #[error("matrix dimensions {lr}x{lc} and {rr}x{rc} are incompatible")]
    DimensionMismatch { lr: usize, lc: usize, rr: usize, rc: usize },
    #[error("requested {r} column reduced minors of a matrix with only {l} rows")]
    ReducedMinorLevel { r: usize, l: usize },
    #[error("generator matrix has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("vector does not lie in the module generated by the given elements")]
    NotInModule,
    #[error("quotient divisor ideal has no nonzero generator")]
    AllGeneratorsZero,
    #[error("free basis search exhausted its bounds without finding a basis")]
    ExtractionExhausted,
    #[error("irreducible factorization incomplete: {0}")]
    FactorizationIncomplete(String),
    #[error("input rejected: {0}")]
    Precondition(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("supplied factor list rejected: {0}")]
    InvalidFactors(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code class for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) => 2,
            Error::ExtractionExhausted => 3,
            Error::FactorizationIncomplete(_) => 4,
            Error::Parse { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::Json(_) => 5,
            _ => 1,
        }
    }
}
