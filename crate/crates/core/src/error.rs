use thiserror::Error;

#[derive(Debug, Error)]
pub enum TlnError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    /// Some pinned determinant, restricted system or boundary value is exactly zero.
    #[error("degenerate network: {0}")]
    Degenerate(String),

    #[error("chirotope is not simplicial")]
    NotSimplicial,

    #[error("no unique vertex for support {0}")]
    NoUniqueVertex(String),

    #[error("network is not competitive: {0}")]
    NotCompetitive(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("sign forced by a three-term Grassmann-Plücker relation: {0}")]
    Pinned(String),

    #[error("integration diverged at t = {0}")]
    Divergence(f64),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl TlnError {
    /// Errors caused by a network sitting exactly on a classification wall.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            TlnError::Degenerate(_) | TlnError::NotSimplicial | TlnError::NoUniqueVertex(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, TlnError>;
