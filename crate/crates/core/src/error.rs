use thiserror::Error;

/// Errors raised by the arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient precision: need {needed} significant digits, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(i64),
    #[error("tame symbol needs odd residue characteristic, got p = {0}")]
    OddResidueOnly(u32),
    #[error("conic search budget exceeded at depth {depth} after {nodes} nodes")]
    SearchBudgetExceeded { depth: u32, nodes: u64 },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("matrix is not in SL2")]
    NotSpecialLinear,
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("matrix entry not in the base field")]
    EntryNotInBaseField,
    #[error("cochain certificate failed on sampled pair {index}: {detail}")]
    CertificationFailed { index: usize, detail: String },
    #[error("quaternion is not invertible")]
    NotInvertible,
    #[error("extension F(sqrt {ext}) does not match structure constant a = {a}")]
    ExtensionMismatch { ext: i64, a: i64 },
    #[error("F(sqrt {0}) does not embed in the quaternion algebra")]
    NoEmbedding(i64),
    #[error("no certified-invertible conjugator at this precision")]
    NoInvertibleSolution,
    #[error("conjugation system is inconsistent")]
    SystemInconsistent,
    #[error("sampling budget exceeded after {0} attempts")]
    SamplingBudgetExceeded(usize),
    #[error("action of order not dividing {0}")]
    ActionOrderMismatch(u64),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("group of order {order} exceeds brute-force limit {limit}")]
    SizeLimitExceeded { order: u64, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("configuration out of range: {0}")]
    ConfigOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
