use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular")]
    Singular,
    #[error("rank deficient")]
    RankDeficient,
    #[error("integer overflow converting {0}")]
    Overflow(String),
    #[error("matrix not symmetric")]
    NotSymmetric,
    #[error("degenerate lattice")]
    Degenerate,
    #[error("lattice not even")]
    NotEven,
    #[error("not an isometry")]
    NotIsometry,
    #[error("subgroup not isotropic")]
    NotIsotropic,
    #[error("invalid torsion quadratic module: {0}")]
    InvalidModule(String),
    #[error("invalid cyclic form: {0}")]
    InvalidCyclic(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("matrix not applicable for this k: {0}")]
    NotApplicable(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
