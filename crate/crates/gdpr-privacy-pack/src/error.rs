use thiserror::Error;

/// Errors raised while assembling catalog-backed rule packs or locations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackError {
    /// A certification scheme needs at least one criterion to check against.
    #[error("criteria domain is empty: certification rules need at least one criterion")]
    EmptyCriteriaDomain,
    /// A location description contradicts itself.
    #[error("inconsistent location spec: {0}")]
    InconsistentSpec(String),
}
