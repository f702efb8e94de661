use thiserror::Error;

/// Errors raised by the structural and numerical layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("degenerate probe: {0}")]
    DegenerateProbe(String),

    #[error("frame convention error: {0}")]
    FrameConvention(String),

    #[error("closure failure between roots {alpha} and {beta}")]
    ClosureFailure { alpha: usize, beta: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown chain id `{0}`")]
    UnknownChain(String),

    #[error("chain id `{0}` is reserved and not built by this crate")]
    ReservedChain(String),

    #[error("certificate format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
