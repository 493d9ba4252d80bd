use crate::error::ModelError;
use crate::params::WeightParams;

/// The parabolic exponential weight ψ(t,r) = A (1+r²)^((2-α)/2) / (1+t).
///
/// Strictly positive, nonincreasing in t, and factorizes exactly as
/// ψ(t,r) = ψ(0,r) / (1+t).
pub fn weight_psi(t: f64, r: f64, w: &WeightParams) -> Result<f64, ModelError> {
    if !t.is_finite() || t < 0.0 {
        return Err(ModelError::NegativeTime(t));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(ModelError::NegativeRadius(r));
    }
    let bracket = (1.0 + r * r).powf((2.0 - w.alpha) / 2.0);
    Ok(w.a_const * bracket / (1.0 + t))
}

/// ∂ψ/∂t. Satisfies -ψ_t = ψ/(1+t), which is how every consumer uses it.
pub fn weight_psi_time_derivative(t: f64, r: f64, w: &WeightParams) -> Result<f64, ModelError> {
    Ok(-weight_psi(t, r, w)? / (1.0 + t))
}

/// Radial component of ∇ψ: A (2-α) (1+r²)^(-α/2) r / (1+t).
///
/// For a radial function this is the full gradient magnitude (up to sign),
/// since ∇ψ = ψ'(r) x/r.
pub fn weight_psi_radial_gradient(t: f64, r: f64, w: &WeightParams) -> Result<f64, ModelError> {
    if !t.is_finite() || t < 0.0 {
        return Err(ModelError::NegativeTime(t));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(ModelError::NegativeRadius(r));
    }
    let bracket_pow = (1.0 + r * r).powf(-w.alpha / 2.0);
    Ok(w.a_const * (2.0 - w.alpha) * bracket_pow * r / (1.0 + t))
}
