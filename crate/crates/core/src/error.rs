use thiserror::Error;

/// Errors raised by construction and evaluation of groups, representations,
/// projectors and experiments.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("element {element} does not belong to group {group}")]
    ElementMismatch { group: String, element: String },

    #[error("representations live on different groups: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("no equivariant target exists (dim S = 0)")]
    NoEquivariantTarget,

    #[error("matrix is not equivariant: relative complement norm {0:.3e}")]
    NotEquivariant(f64),

    #[error("invalid experiment configuration: {0}")]
    InvalidExperiment(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
