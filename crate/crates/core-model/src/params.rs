use crate::error::ModelError;

/// Continuum problem data: dimension, damping exponent, data support radius.
///
/// `alpha` is restricted to `[0, 1)`; at `alpha = 0` the damping is constant
/// and the companion heat equation is the classical one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    pub n_dim: usize,
    pub alpha: f64,
    /// Support radius of the initial data: supp(u0, u1) ⊆ { r ≤ support_radius }.
    pub support_radius: f64,
}

impl ProblemParams {
    pub fn new(n_dim: usize, alpha: f64, support_radius: f64) -> Result<Self, ModelError> {
        if n_dim < 1 {
            return Err(ModelError::InvalidDimension(n_dim));
        }
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(ModelError::InvalidAlpha(alpha));
        }
        if !support_radius.is_finite() || support_radius <= 0.0 {
            return Err(ModelError::InvalidSupportRadius(support_radius));
        }
        Ok(Self { n_dim, alpha, support_radius })
    }
}

impl Default for ProblemParams {
    /// Desk-scale default: one dimension, alpha = 1/2, unit support.
    fn default() -> Self {
        Self { n_dim: 1, alpha: 0.5, support_radius: 1.0 }
    }
}

/// Parameters of the exponential weight ψ(t,x) = A ⟨x⟩^(2-α) / (1+t).
///
/// The constant is pinned to the damping exponent by
/// A = 1 / ((2-α)² (2+δ)). `delta` and `epsilon` are independent small
/// knobs: `delta` enters A, `epsilon` is the rate loss folded into decay
/// comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub alpha: f64,
    pub delta: f64,
    pub epsilon: f64,
    /// Derived: 1 / ((2-alpha)^2 (2+delta)). Kept stored so every consumer
    /// sees the identical value; `new` is the only constructor.
    pub a_const: f64,
}

impl WeightParams {
    pub fn new(alpha: f64, delta: f64, epsilon: f64) -> Result<Self, ModelError> {
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(ModelError::InvalidAlpha(alpha));
        }
        if !delta.is_finite() || delta <= 0.0 {
            return Err(ModelError::InvalidDelta(delta));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(ModelError::InvalidEpsilon(epsilon));
        }
        let a_const = 1.0 / ((2.0 - alpha).powi(2) * (2.0 + delta));
        Ok(Self { alpha, delta, epsilon, a_const })
    }

    /// Weight parameters matching a problem, with the default small knobs
    /// delta = epsilon = 0.1.
    pub fn for_problem(p: &ProblemParams) -> Self {
        // alpha was already validated by ProblemParams.
        Self::new(p.alpha, 0.1, 0.1).expect("default delta/epsilon are valid")
    }
}
