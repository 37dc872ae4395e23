use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {residues:?} does not belong to a group with moduli {moduli:?}")]
    ElementMismatch { residues: Vec<usize>, moduli: Vec<usize> },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("eigensolver failed to converge on a {dim}x{dim} matrix")]
    EigenConvergence { dim: usize },

    #[error("invalid factor index {index} for {factors} factors")]
    InvalidFactor { index: usize, factors: usize },

    #[error("invalid bipartition cut {cut} for {factors} factors (expected 1..{factors})")]
    InvalidCut { cut: usize, factors: usize },

    #[error("mappings are incompatible: {0}")]
    IncompatibleMappings(String),

    #[error(
        "decomposition has {terms} nonzero terms but the dual group has only {capacity} points; \
         every separable operator needs at most (dim H)^2 = {caratheodory} terms"
    )]
    Capacity { terms: usize, capacity: usize, caratheodory: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance spec: {0}")]
    InvalidInstance(String),
}
