use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Config` and `Io` are user-fixable; `Geometry` and `Numerics` indicate
/// the requested evaluation is outside what the implementation supports or
/// that an internal consistency check tripped.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid or inconsistent run configuration.
    #[error("config: {0}")]
    Config(String),

    /// Geometric situation the solver does not handle.
    #[error("geometry: {0}")]
    Geometry(String),

    /// A numerical invariant failed (residues, tolerances, non-finite values).
    #[error("numerics: {0}")]
    Numerics(String),

    /// File or serialization failure.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub fn numerics(msg: impl Into<String>) -> Self {
        Error::Numerics(msg.into())
    }
}
