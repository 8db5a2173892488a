use thiserror::Error;

/// Errors raised by the exact-arithmetic, curve, model and atlas layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("curve mismatch")]
    CurveMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pfaffian undefined for odd size {0}")]
    PfaffianUndefined(usize),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("degree must be 2g+2 (genus {genus}, got degree {degree})")]
    CurveDegree { genus: usize, degree: i64 },
    #[error("genus must be at least 2, got {0}")]
    Genus(usize),
    #[error("singular model: f is not squarefree")]
    SingularModel,
    #[error("not holomorphic: {0}")]
    NotHolomorphic(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("incompatible twist grids: {0}")]
    IncompatibleTwists(String),
    #[error("fibration image not in Hitchin base: {0}")]
    NotInHitchinBase(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("W0 rank must be q-p+1 = {expected}, got {got}")]
    W0Rank { expected: usize, got: usize },
    #[error("label-level only for a != 0: matrix-level models require a trivial torsion label")]
    LabelLevelOnly,
    #[error("unsupported (p,q) = ({p},{q}): {reason}")]
    Unsupported { p: usize, q: usize, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
