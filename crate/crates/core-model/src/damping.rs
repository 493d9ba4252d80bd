use crate::error::ModelError;

/// The space-dependent damping coefficient a(r) = (1 + r²)^(-α/2).
///
/// Takes values in (0, 1], equals 1 at the origin, and is monotone
/// nonincreasing in r. At alpha = 0 it degenerates to the constant 1.
pub fn damping_coefficient(r: f64, alpha: f64) -> Result<f64, ModelError> {
    if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
        return Err(ModelError::InvalidAlpha(alpha));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(ModelError::NegativeRadius(r));
    }
    Ok((1.0 + r * r).powf(-alpha / 2.0))
}
