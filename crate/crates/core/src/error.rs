use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("deficit parameter alpha = {0} outside (0, 1]")]
    InvalidAlpha(f64),

    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("degenerate oscillator coefficient a2^2 = {a2sq} at E = {energy}: no confinement")]
    Degenerate { energy: f64, a2sq: f64 },

    #[error("series needs at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },

    #[error("series not converged at r = {radius}: last term {last_term:e}")]
    SeriesNotConverged { radius: f64, last_term: f64 },

    #[error("negative radius {0}")]
    NegativeRadius(f64),

    #[error("invalid search window: {0}")]
    InvalidSearch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no bound state in the search window")]
    NoRoot,

    #[error("no oracle eigenvector with {nodes} nodes")]
    NodeMismatch { nodes: u32 },

    #[error("oracle result depends on inner cutoff: relative shift {shift:e} > {limit:e}")]
    CutoffSensitive { shift: f64, limit: f64 },

    #[error("flux shift needs a nonzero charge and a nonzero shift")]
    InvalidShift,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
