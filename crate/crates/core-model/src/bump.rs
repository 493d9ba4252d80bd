use crate::error::ModelError;
use crate::field::Field;
use crate::grid::RadialGrid;

/// Smooth compactly supported initial data
///
/// ```text
///     b(r) = amplitude * exp(1 - 1/(1 - (r/L)²))   for r < L,
///     b(r) = 0                                      for r >= L.
/// ```
///
/// The continuum function is C^∞ across r = L; on the grid the samples are
/// exactly zero at and beyond node ceil(L/dr).
pub fn bump_initial_data(
    grid: &RadialGrid,
    support_radius: f64,
    amplitude: f64,
) -> Result<Field, ModelError> {
    if !support_radius.is_finite() || support_radius <= 0.0 {
        return Err(ModelError::InvalidSupportRadius(support_radius));
    }
    if support_radius >= grid.r_max() {
        return Err(ModelError::SupportExceedsGrid {
            support: support_radius,
            r_max: grid.r_max(),
        });
    }
    if !amplitude.is_finite() {
        return Err(ModelError::NonFiniteValue { index: 0 });
    }
    Field::from_fn(grid, |r| {
        let s = r / support_radius;
        if s < 1.0 {
            amplitude * (1.0 - 1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    })
}
