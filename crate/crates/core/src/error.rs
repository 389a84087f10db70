use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chart index {0} out of range (expected 0, 1 or 2)")]
    ChartIndex(u8),

    #[error("invalid fixed point: {0}")]
    FixedPoint(String),

    #[error("weight {weight} vanishes at the specialization (w={w}, z={z})")]
    DegenerateSpecialization { weight: String, w: String, z: String },

    #[error("no nondegenerate specialization found after {0} attempts")]
    SamplingExhausted(usize),

    #[error("forbidden list contains the zero weight")]
    ZeroForbiddenWeight,

    #[error("invalid graph family: {0}")]
    Family(String),

    #[error("degree must be at least 1, got {0}")]
    Degree(u32),

    #[error("psi integral needs n >= 3 and nonzero omegas: {0}")]
    PsiIntegral(String),

    #[error("pair invariant is not constant across specializations: {0}")]
    NonConstant(String),

    #[error("invalid homology degree {0}")]
    HomologyDegree(u32),

    #[error("singular Gram matrix in homology degree {0}")]
    SingularGram(u32),

    #[error("missing f({0})")]
    MissingF(u32),

    #[error("{0}")]
    Usage(String),
}
