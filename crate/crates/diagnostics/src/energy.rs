use crate::error::DiagnosticsError;
use core_model::{
    damping_coefficient, radial_derivative, radial_integral, weight_psi,
    weight_psi_radial_gradient, RadialGrid, WeightParams,
};
use wave_solver::WaveSnapshot;

/// The three weighted functionals measured along a wave trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyFunctionals {
    /// E1 = ∫ e^(2ψ) { (t0+t)^α (u_t² + |∇u|²) + a u² } dx.
    pub e1: f64,
    /// E1_psi = ∫ e^(2ψ) (1 + (t0+t)^α ψ/(1+t)) (u_t² + |∇u|²) dx,
    /// the dissipation functional paired with E1.
    pub e1_psi: f64,
    /// H1_tilde = ν ∫ e^(2ψ) ( d3 |∇ψ|² + (q - 2 d1) a/(2(1+t)) ) u² dx,
    /// the lower-order mass term, q = (n-α)/(2-α).
    pub h1_tilde: f64,
}

/// Coercivity margins of the weight, both functions of delta alone (and the
/// problem exponents), both vanishing as delta -> 0:
///
/// - d1 is the loss in the pointwise bound
///   Δψ ≥ ((n-α)/(2(2-α)) - d1) a/(1+t), which evaluates to
///   d1 = (n-α)/(2-α) · δ/(2(2+δ));
/// - d3 is the coefficient left over after completing the square in
///   |∇u|² + 4u∇u·∇ψ against |∇ψ|²u²: with d2 = δ(1-δ)/3 the quadratic
///   form dominates d3 (|∇u|² + |∇ψ|²u²) for d3 = d2/(4+d2).
fn coercivity_margins(n: f64, alpha: f64, delta: f64) -> (f64, f64) {
    let d1 = (n - alpha) / (2.0 - alpha) * delta / (2.0 * (2.0 + delta));
    let d2 = delta * (1.0 - delta) / 3.0;
    let d3 = d2 / (4.0 + d2);
    (d1, d3)
}

/// Evaluate the three weighted energy functionals on a snapshot.
///
/// `t0` shifts the time origin of the (t0+t)^α factor and `nu` couples the
/// lower-order mass term; both must be positive. The trajectory-level
/// claim, checked by the verification harness, is that E1 decays at least
/// like (t0+t)^(-(n-α)/(2-α)) up to a small loss.
pub fn energy_functionals(
    snapshot: &WaveSnapshot,
    w: &WeightParams,
    t0: f64,
    nu: f64,
    grid: &RadialGrid,
) -> Result<EnergyFunctionals, DiagnosticsError> {
    if snapshot.grid != *grid {
        return Err(DiagnosticsError::GridMismatch);
    }
    if (w.alpha - snapshot.params.alpha).abs() > 1e-12 {
        return Err(DiagnosticsError::AlphaMismatch {
            weight: w.alpha,
            problem: snapshot.params.alpha,
        });
    }
    if !t0.is_finite() || t0 <= 0.0 {
        return Err(DiagnosticsError::NonpositiveParameter { name: "t0", value: t0 });
    }
    if !nu.is_finite() || nu <= 0.0 {
        return Err(DiagnosticsError::NonpositiveParameter { name: "nu", value: nu });
    }

    let t = snapshot.t;
    let n = grid.n_points();
    let n_dim = grid.n_dim() as f64;
    let alpha = w.alpha;
    let (d1, d3) = coercivity_margins(n_dim, alpha, w.delta);
    let q = (n_dim - alpha) / (2.0 - alpha);
    let shifted_pow = (t0 + t).powf(alpha);

    let u_r = radial_derivative(&snapshot.u, grid)?;

    let mut g_e1 = Vec::with_capacity(n);
    let mut g_e1_psi = Vec::with_capacity(n);
    let mut g_h1 = Vec::with_capacity(n);
    for i in 0..n {
        let r = grid.r(i);
        let psi = weight_psi(t, r, w)?;
        let weight = (2.0 * psi).exp();
        let a = damping_coefficient(r, alpha)?;
        let kinetic = snapshot.u_t[i] * snapshot.u_t[i] + u_r[i] * u_r[i];
        let mass = snapshot.u[i] * snapshot.u[i];
        let psi_r = weight_psi_radial_gradient(t, r, w)?;

        g_e1.push(weight * (shifted_pow * kinetic + a * mass));
        // -ψ_t = ψ/(1+t), so the dissipation factor is 1 + (t0+t)^α ψ/(1+t).
        g_e1_psi.push(weight * (1.0 + shifted_pow * psi / (1.0 + t)) * kinetic);
        g_h1.push(
            nu * weight
                * (d3 * psi_r * psi_r + (q - 2.0 * d1) * a / (2.0 * (1.0 + t)))
                * mass,
        );
    }

    Ok(EnergyFunctionals {
        e1: radial_integral(&g_e1, grid)?,
        e1_psi: radial_integral(&g_e1_psi, grid)?,
        h1_tilde: radial_integral(&g_h1, grid)?,
    })
}
