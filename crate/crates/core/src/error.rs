use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {re}{im:+}i is outside the domain: {reason}")]
    Domain {
        re: f64,
        im: f64,
        reason: &'static str,
    },

    #[error("pole or zero at {at}")]
    Pole { at: f64 },

    #[error("singular point t = {t} (negative integer)")]
    Singularity { t: f64 },

    #[error("index {index} exceeds the supported maximum {max}")]
    Overflow { index: u64, max: u64 },

    #[error("order {n} is outside 1..={max}")]
    InvalidOrder { n: u32, max: u32 },

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("canonical product construction failed for order {n}: {reason}")]
    Construction { n: u32, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
