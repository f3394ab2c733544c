use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input: wrong dimensions, non-Hermitian operators, bad parameters.
    #[error("invalid input: {0}")]
    Input(String),

    /// The vectors do not span the space (frame operator singular).
    #[error("not a frame: {0}")]
    NotAFrame(String),

    /// An operation that requires a tight frame (or similar) was handed something else.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported dimension {0}: only odd dimensions >= 3 are supported")]
    UnsupportedDimension(usize),

    /// A quantity is undefined or a construction degenerated numerically.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// True for errors caused by a computation rather than by the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}
