use core_model::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("time step {dt} exceeds the stability bound {limit} (cfl factor times the dimension-aware stable step)")]
    CflViolation { dt: f64, limit: f64 },
    #[error("cfl factor must lie in (0, 1], got {0}")]
    InvalidCfl(f64),
    #[error("initial data reaches r = {reach} but must vanish beyond r_max - 2dr = {limit}")]
    SupportTooWide { reach: f64, limit: f64 },
    #[error("solution lost finiteness at t = {t}; check the CFL bound or the data scale")]
    NonFinite { t: f64 },
    #[error("sample times must be finite, nonnegative and ascending")]
    InvalidSampleTimes,
    #[error("time derivative order {0} not supported (max 3)")]
    DerivativeOrder(usize),
}
