use thiserror::Error;

/// Errors raised by the experiment modules.
///
/// `InvalidArgument` covers every rejected input; the remaining variants are
/// runtime failures of a simulation that was started with valid inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid matrix: row {row}: {reason}")]
    InvalidMatrix { row: usize, reason: String },

    #[error("integration diverged at t = {t}")]
    Divergence { t: f64 },

    #[error("singular field: distance {distance:e} to center {center} is below the cutoff")]
    Singularity { center: usize, distance: f64 },

    #[error("particle did not escape after {steps} steps (last position ({x}, {y}))")]
    NoEscape { steps: u64, x: f64, y: f64 },

    #[error("runaway retry loop: {attempts} attempts without success ({what})")]
    Runaway { attempts: u64, what: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by bad inputs rather than by a simulation run.
    pub fn is_invalid_input(&self) -> bool {
        matches!(self, Error::InvalidArgument(_) | Error::InvalidMatrix { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} = {p} is not a probability in [0, 1]")))
    }
}
