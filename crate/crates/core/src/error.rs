use thiserror::Error;

use crate::oracle::ThresholdReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid threshold: {0}")]
    InvalidThreshold(String),
    #[error("invalid combination: {0}")]
    InvalidCombination(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("root solver failed to converge: {0}")]
    Convergence(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("optimal policy is not of threshold form: {0}")]
    NotThreshold(Box<ThresholdReport>),
}
