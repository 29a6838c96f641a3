use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational `{0}` (expected p or p/q with q != 0)")]
    Rational(String),
    #[error("malformed class id `{0}`: {1}")]
    ClassId(String, String),
    #[error("unknown curve id `{0}`")]
    CurveId(String),
    #[error("malformed bracket file: {0}")]
    BracketFile(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("dimension must be even and at least 2, got {0}")]
    OddDimension(usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is not invertible")]
    Singular,
    #[error("two-form is degenerate")]
    DegenerateForm,
    #[error("slot {slot} out of range for a map with {arity} arguments")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("group element is not symplectic")]
    NotSymplectic,
    #[error("bracket violates the Jacobi identity")]
    NotLie,
    #[error("bracket is not closed for the two-form (d_mu omega != 0)")]
    NotClosed,
    #[error("bracket is not nilpotent")]
    NotNilpotent,
    #[error("bilinear form is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("{class}: parameter out of domain ({constraint})")]
    Domain { class: String, constraint: String },
    #[error("bracket does not lie in the subspace {0}")]
    NotInSubspace(String),
    #[error("invalid Iwasawa parameters: {0}")]
    Iwasawa(String),
    #[error("invalid Hasse edge: {0}")]
    InvalidEdge(String),
    #[error("no sign change of det Ric on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
