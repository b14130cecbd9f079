use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("image of variable `{0}` is not homogeneous")]
    InhomogeneousImage(String),
    #[error("image of variable `{var}` has degree {found}, expected {expected}")]
    ImageDegreeMismatch { var: String, expected: u32, found: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("genus {0} out of range")]
    InvalidGenus(u32),
    #[error("torus rank must be at least 1")]
    InvalidRank,
    #[error("invalid weight matrix: {0}")]
    InvalidWeights(String),
    #[error("Gm weights: {0}")]
    InvalidGmWeights(String),
    #[error("degree cutoff {0} is below the minimum of 4")]
    DegreeCutoff(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
