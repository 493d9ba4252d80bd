use thiserror::Error;

/// Validation failures for model parameters and fields.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("spatial dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("damping exponent alpha must satisfy 0 <= alpha < 1, got {0}")]
    InvalidAlpha(f64),
    #[error("support radius must be positive and finite, got {0}")]
    InvalidSupportRadius(f64),
    #[error("support radius {support} does not fit inside the grid (r_max = {r_max})")]
    SupportExceedsGrid { support: f64, r_max: f64 },
    #[error("delta must be positive and finite, got {0}")]
    InvalidDelta(f64),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("mesh spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),
    #[error("grid needs at least {min} nodes, got {got}")]
    TooFewNodes { min: usize, got: usize },
    #[error("radius must be nonnegative, got {0}")]
    NegativeRadius(f64),
    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),
    #[error("the self-similar profile is defined for t > 0 only, got t = {0}")]
    NonPositiveTime(f64),
    #[error("field value at node {index} is not finite")]
    NonFiniteValue { index: usize },
    #[error("field has {got} values but the grid has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
}
