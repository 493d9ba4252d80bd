use crate::error::ModelError;
use crate::grid::RadialGrid;

/// Surface coefficient ω_n = 2 π^(n/2) / Γ(n/2), the area of the unit
/// sphere in n dimensions: ω_1 = 2, ω_2 = 2π, ω_3 = 4π.
pub fn sphere_surface_coefficient(n_dim: usize) -> f64 {
    debug_assert!(n_dim >= 1);
    let half = n_dim as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma_of_half_integer(n_dim)
}

/// Γ(n/2) for integer n >= 1, by the recurrence Γ(x+1) = x Γ(x) from the
/// exact bases Γ(1/2) = √π and Γ(1) = 1. Avoids a general gamma routine;
/// only half-integer arguments ever occur here.
fn gamma_of_half_integer(n: usize) -> f64 {
    let mut value = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut two_x = if n % 2 == 0 { 2 } else { 1 }; // current argument, doubled
    while two_x < n {
        value *= two_x as f64 / 2.0;
        two_x += 2;
    }
    value
}

/// Integral of a radial function over R^n by the composite trapezoid rule:
///
/// ```text
///     ∫_{R^n} g(|x|) dx  ≈  ω_n Σ_i w_i g(r_i) r_i^(n-1) dr,
/// ```
///
/// with trapezoid weights w = (1/2, 1, ..., 1, 1/2). Exact for integrands
/// whose profile g(r) r^(n-1) is piecewise linear on the cells; second
/// order in dr for smooth ones. `g` holds the node samples of g(r).
pub fn radial_integral(g: &[f64], grid: &RadialGrid) -> Result<f64, ModelError> {
    if g.len() != grid.n_points() {
        return Err(ModelError::LengthMismatch { expected: grid.n_points(), got: g.len() });
    }
    let n = grid.n_points();
    let power = grid.n_dim() as u32 - 1;
    let mut sum = 0.5 * g[0] * grid.r(0).powi(power as i32);
    for i in 1..n - 1 {
        sum += g[i] * grid.r(i).powi(power as i32);
    }
    sum += 0.5 * g[n - 1] * grid.r(n - 1).powi(power as i32);
    Ok(sphere_surface_coefficient(grid.n_dim()) * sum * grid.dr())
}
