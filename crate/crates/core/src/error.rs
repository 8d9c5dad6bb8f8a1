use thiserror::Error;

/// Errors raised by the channel models and the analytical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} levels, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A solver was asked for a parameter outside the regime where it exists.
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    /// Gaussian point outside the audited domain `h_d^2 >= 1`, `h_c^2 >= 1`.
    #[error("out of audit domain: h_d^2 = {hd2}, h_c^2 = {hc2}")]
    OutOfDomain { hd2: f64, hc2: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
