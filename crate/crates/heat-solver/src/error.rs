use core_model::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeatError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("theta must lie in [0.5, 1], got {0}")]
    InvalidTheta(f64),
    #[error("time step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("start time must be nonnegative and finite, got {0}")]
    InvalidStartTime(f64),
    #[error("cannot evolve backwards: from t = {from} to t = {to}")]
    NegativeEvolution { from: f64, to: f64 },
    #[error("sample times must be nondecreasing and at or after the start time {start}")]
    UnorderedSamples { start: f64 },
    #[error("tridiagonal solve hit a vanishing pivot at row {row}")]
    SingularSystem { row: usize },
    #[error("solution lost finiteness at t = {t}")]
    NonFinite { t: f64 },
}
