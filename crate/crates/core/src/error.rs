use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("accuracy target missed for {what}: estimate {estimate}, error bound {est_error}")]
    Accuracy { what: String, estimate: f64, est_error: f64 },
    #[error("truncation not converged for {what}: last {last}, previous {previous}")]
    Truncation { what: String, last: f64, previous: f64 },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by inputs outside the admissible region.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Pole(_) | Error::Capacity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
