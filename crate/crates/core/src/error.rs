use thiserror::Error;

/// Errors raised by the numerical kernels and pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("causality violation: t = {t} precedes tau = {tau}")]
    Causality { t: f64, tau: f64 },

    #[error("singular integrand: {0}")]
    SingularIntegrand(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("singular linear system (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("factorization error: {0}")]
    Factorization(String),

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
