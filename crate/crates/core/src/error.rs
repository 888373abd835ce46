use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("general elements are not invertible (negative power {0} of a non-word element)")]
    NotInvertible(i64),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("resource guard exceeded: {0}")]
    Guard(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("integration blew up at t = {time}: norm {norm:.3e} exceeds {limit:.3e}")]
    BlowUp { time: f64, norm: f64, limit: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
