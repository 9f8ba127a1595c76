use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group description: {0}")]
    InvalidGroup(String),

    #[error("group too large: generator closure exceeded the order cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("no element labelled {0:?}")]
    UnknownElement(String),

    #[error("eigenvalue clustering failed after {attempts} randomized attempts; raise working precision")]
    Clustering { attempts: usize },

    #[error("irrep construction check failed: {0}")]
    IrrepCheck(String),

    #[error("character row {0} missing")]
    MissingCharacter(usize),

    #[error("angle {0} lies outside the open interval (0, 2pi)")]
    AngleDomain(f64),

    #[error("weight uses half-integer spin {l2}/2, which has no centralizer-fixed vector")]
    HalfIntegerWeight { l2: u32 },

    #[error("column {l} is not centralizer-fixed (fixed columns: 0..{m})")]
    NotFixedColumn { l: usize, m: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{check}: deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    Tolerance {
        check: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("irrep truncation too small: decomposition of L(V) covers {covered} of {expected} dimensions")]
    Truncation { covered: usize, expected: usize },

    #[error("unsupported schema {found:?} (expected {expected:?})")]
    Schema { found: String, expected: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
