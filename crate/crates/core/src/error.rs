use thiserror::Error;

/// Errors produced by the numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid mode index {index:?} for {family}")]
    InvalidIndex { family: &'static str, index: (u32, u8) },
    #[error("diagonal point: the Green's function diverges at R = R'")]
    DiagonalPoint,
    #[error("no convergence after {modes} modes (estimate {estimate:e}, target {target:e})")]
    NonConvergence { modes: usize, estimate: f64, target: f64 },
    #[error("bracket failure: {0}")]
    Bracket(String),
    #[error("order {0} is too large")]
    OrderTooLarge(usize),
    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),
    #[error("incomplete spectrum: {0}")]
    IncompleteSpectrum(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
