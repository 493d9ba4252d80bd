use core_model::ModelError;
use diagnostics::DiagnosticsError;
use heat_solver::HeatError;
use thiserror::Error;
use wave_solver::WaveError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    // toml's Display carries line and column of the offending key.
    #[error("scenario parse error: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("t_max must exceed 10 (rate fits need a decade), got {0}")]
    TMaxTooSmall(f64),

    #[error("sample schedule needs at least 20 points, got {0}")]
    TooFewSamples(usize),

    #[error("{name} must be {requirement}, got {value}")]
    BadParameter { name: &'static str, requirement: &'static str, value: f64 },

    #[error("grid would need {needed} nodes, above the cap of {cap}")]
    NodeCap { needed: usize, cap: usize },

    #[error("convergence study needs at least 3 levels, got {0}")]
    TooFewLevels(usize),

    #[error("malformed series file {path} at line {line}")]
    SeriesFormat { path: String, line: usize },

    // A failure while building an artifact shared across experiments
    // (wave trajectory, evolved profile); carries the original message.
    #[error("{0}")]
    SharedArtifact(String),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Heat(#[from] HeatError),

    #[error(transparent)]
    Wave(#[from] WaveError),

    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// CLI exit code: 2 for configuration and usage problems, 1 for
    /// runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Read { .. }
            | HarnessError::Parse(_)
            | HarnessError::TMaxTooSmall(_)
            | HarnessError::TooFewSamples(_)
            | HarnessError::BadParameter { .. }
            | HarnessError::NodeCap { .. }
            | HarnessError::TooFewLevels(_)
            | HarnessError::Model(_) => 2,
            _ => 1,
        }
    }
}
