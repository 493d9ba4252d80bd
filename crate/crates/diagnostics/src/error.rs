use core_model::ModelError;
use heat_solver::HeatError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Heat(#[from] HeatError),

    #[error("sample (t = {t}, value = {value}) is not finite")]
    NonFiniteSample { t: f64, value: f64 },

    #[error("sample (t = {t}, value = {value}) is negative; decay series carry magnitudes")]
    NegativeValue { t: f64, value: f64 },

    #[error("sample times must be strictly increasing, violated at t = {t}")]
    UnorderedTimes { t: f64 },

    #[error("fit window ({lo}, {hi}) is not a finite increasing interval")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("sample at t = {0} inside the fit window; log-log fits need t > 0")]
    NonpositiveTime(f64),

    #[error("{found} samples in the fit window, {need} required")]
    InsufficientSamples { found: usize, need: usize },

    #[error(
        "weighted integral overflows f64 (log value {log_value:.3}); the field carries \
         mass where the weight is astronomically large, which indicates data outside \
         the admissible support"
    )]
    WeightOverflow { log_value: f64 },

    #[error("{have} derivative fields supplied, {need} required for the requested order")]
    MissingDerivatives { have: usize, need: usize },

    #[error("region exponent rho = {rho} outside (0, {limit}) for alpha = {alpha}")]
    InvalidRho { rho: f64, alpha: f64, limit: f64 },

    #[error("region margin mu = {mu} outside (0, {cap})")]
    InvalidMu { mu: f64, cap: f64 },

    #[error("radius {0} is not finite")]
    NonFiniteRadius(f64),

    #[error("time {0} is negative or not finite")]
    InvalidTime(f64),

    #[error("parameter {name} must be positive and finite, got {value}")]
    NonpositiveParameter { name: &'static str, value: f64 },

    #[error("weight alpha = {weight} disagrees with problem alpha = {problem}")]
    AlphaMismatch { weight: f64, problem: f64 },

    #[error("field or snapshot grid does not match the grid passed in")]
    GridMismatch,

    #[error("snapshot history is empty")]
    EmptyHistory,

    #[error("snapshot history must begin at time zero, first snapshot sits at t = {0}")]
    HistoryStart(f64),

    #[error("snapshot history times must be strictly increasing")]
    HistoryOrder,

    #[error("{found} quadrature nodes in the history, at least {need} required")]
    TooFewQuadratureNodes { found: usize, need: usize },

    #[error("{count} nodes with spacing >= {min_spacing} do not fit in [0, {t}]")]
    QuadratureTooDense { count: usize, min_spacing: f64, t: f64 },
}
