use thiserror::Error;

/// Everything that can go wrong inside the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings")]
    MixedRings,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("variable name collision: {0}")]
    NameCollision(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) = {value} is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, value: String, expected: i64 },
    #[error("vector is not homogeneous")]
    InhomogeneousVector,
    #[error("{which} is not zero: entry ({row}, {col}) = {value}")]
    NotSquareZero { which: String, row: usize, col: usize, value: String },
    #[error("image not inside kernel")]
    ImageNotInKernel,
    #[error("ungraded deformation parameter: specialize first")]
    UngradedParameter,
    #[error("support violation: H_{parity} is not supported on the ideal (generator {generator} not in the radical of the annihilator)")]
    SupportViolation { parity: char, generator: String },
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("pairing <alpha, beta> = {0} is nonzero")]
    PairingNonzero(String),
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("homotopy is not a contraction")]
    NotContraction,
    #[error("module is not annihilated by {0}")]
    NotAnnihilated(String),
    #[error("ring map is not finite: {0}")]
    NotFinite(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
