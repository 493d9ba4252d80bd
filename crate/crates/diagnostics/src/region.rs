use crate::error::DiagnosticsError;
use core_model::{radial_integral, sphere_surface_coefficient, Field, RadialGrid, WeightParams};

/// Outer region growing at the parabolic scale: at time t it covers
/// { r : ⟨r⟩^(2-α) ≥ (1+t)^(1+ρ) }. Mass there is expected to decay like
/// exp(-(2A-μ)(1+t)^ρ) up to a polynomial factor, which is what makes
/// finite computational domains legitimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicRegionSpec {
    pub rho: f64,
    pub mu: f64,
}

impl ParabolicRegionSpec {
    /// Requires 0 < rho < 1 - α and 0 < mu < 2A, both strict.
    pub fn new(rho: f64, mu: f64, w: &WeightParams) -> Result<Self, DiagnosticsError> {
        let limit = 1.0 - w.alpha;
        if !rho.is_finite() || rho <= 0.0 || rho >= limit {
            return Err(DiagnosticsError::InvalidRho { rho, alpha: w.alpha, limit });
        }
        let cap = 2.0 * w.a_const;
        if !mu.is_finite() || mu <= 0.0 || mu >= cap {
            return Err(DiagnosticsError::InvalidMu { mu, cap });
        }
        Ok(Self { rho, mu })
    }
}

/// Radius where the region begins: ⟨r⟩^(2-α) = (1+t)^(1+ρ) solved for r.
/// Zero when the region already covers everything (small t).
pub fn region_threshold_radius(t: f64, rho: f64, alpha: f64) -> f64 {
    let inner = (1.0 + t).powf(2.0 * (1.0 + rho) / (2.0 - alpha)) - 1.0;
    inner.max(0.0).sqrt()
}

/// Squared-L² mass of the field inside the region:
/// ω_n ∫_{r ≥ r*} f² r^(n-1) dr with r* the threshold radius.
///
/// The cell containing r* is split by linear interpolation of the profile
/// f² r^(n-1), so region mass plus complement mass reproduces the full
/// trapezoid integral up to rounding.
pub fn region_mass(
    f: &Field,
    t: f64,
    spec: &ParabolicRegionSpec,
    grid: &RadialGrid,
    alpha: f64,
) -> Result<f64, DiagnosticsError> {
    if !t.is_finite() || t < 0.0 {
        return Err(DiagnosticsError::InvalidTime(t));
    }
    f.check_grid(grid)?;

    let r_star = region_threshold_radius(t, spec.rho, alpha);
    let sq: Vec<f64> = f.values().iter().map(|v| v * v).collect();
    if r_star <= 0.0 {
        return Ok(radial_integral(&sq, grid)?);
    }
    if r_star >= grid.r_max() {
        return Ok(0.0);
    }

    let power = grid.n_dim() as i32 - 1;
    let h = |i: usize| sq[i] * grid.r(i).powi(power);
    let dr = grid.dr();
    // Cell k holds r*: r_k ≤ r* < r_(k+1). r* < r_max keeps k+1 in range.
    let k = (r_star / dr).floor() as usize;
    let k = k.min(grid.n_points() - 2);

    // Partial piece of the straddling cell, profile taken linear on it.
    let s = (r_star - grid.r(k)) / dr;
    let h_star = h(k) + (h(k + 1) - h(k)) * s;
    let mut sum = (grid.r(k + 1) - r_star) * (h_star + h(k + 1)) / 2.0;
    for i in k + 1..grid.n_points() - 1 {
        sum += dr * (h(i) + h(i + 1)) / 2.0;
    }
    Ok(sphere_surface_coefficient(grid.n_dim()) * sum)
}
