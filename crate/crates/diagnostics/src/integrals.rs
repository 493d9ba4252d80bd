use crate::error::DiagnosticsError;
use core_model::{
    damping_coefficient, radial_derivative, radial_integral, sphere_surface_coefficient,
    weight_psi, Field, RadialGrid, WeightParams,
};

/// L² norm over R^n of a radial field: (ω_n ∫ f(r)² r^(n-1) dr)^(1/2) by
/// the composite trapezoid rule on the grid.
pub fn l2_norm(f: &Field, grid: &RadialGrid) -> Result<f64, DiagnosticsError> {
    f.check_grid(grid)?;
    let sq: Vec<f64> = f.values().iter().map(|v| v * v).collect();
    Ok(radial_integral(&sq, grid)?.sqrt())
}

/// L² norm of the part of the field at radii strictly beyond `radius`:
/// the tail norm (ω_n ∫_{r > radius} f² r^(n-1) dr)^(1/2).
///
/// Nodes at r ≤ radius are masked before quadrature, so a field whose
/// support ends at or before `radius` gives exactly zero.
pub fn mass_outside(
    f: &Field,
    grid: &RadialGrid,
    radius: f64,
) -> Result<f64, DiagnosticsError> {
    if !radius.is_finite() {
        return Err(DiagnosticsError::NonFiniteRadius(radius));
    }
    f.check_grid(grid)?;
    let sq: Vec<f64> = f
        .values()
        .iter()
        .zip(grid.radii())
        .map(|(v, r)| if r > radius { v * v } else { 0.0 })
        .collect();
    Ok(radial_integral(&sq, grid)?.sqrt())
}

/// Above this exponent the weighted quadrature switches to log-domain
/// accumulation; plain e^(2ψ) products stay far from f64 overflow below it.
const LOG_DOMAIN_THRESHOLD: f64 = 500.0;

/// Weighted square integral ω_n ∫ e^(2ψ(t,r)) [a(r)] f(r)² r^(n-1) dr,
/// with the damping factor a included when `include_a` is set.
///
/// Nodes where f vanishes contribute nothing even where the weight would
/// overflow. When 2ψ exceeds 500 somewhere on the support of f the sum is
/// accumulated in the log domain; if even the log-domain total exceeds
/// f64 range the integral is reported as an overflow, which means the
/// field carries mass far outside the region any admissible evolution of
/// compactly supported data can reach.
pub fn weighted_integral(
    f: &Field,
    t: f64,
    w: &WeightParams,
    include_a: bool,
    grid: &RadialGrid,
) -> Result<f64, DiagnosticsError> {
    f.check_grid(grid)?;
    let n = grid.n_points();
    let n_dim = grid.n_dim();

    let mut two_psi = Vec::with_capacity(n);
    for r in grid.radii() {
        two_psi.push(2.0 * weight_psi(t, r, w)?);
    }
    let max_on_support = f
        .values()
        .iter()
        .zip(&two_psi)
        .filter(|(v, _)| **v != 0.0)
        .map(|(_, p)| *p)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_on_support == f64::NEG_INFINITY {
        return Ok(0.0); // f vanishes identically
    }

    if max_on_support <= LOG_DOMAIN_THRESHOLD {
        let g: Vec<f64> = (0..n)
            .map(|i| {
                let v = f[i];
                if v == 0.0 {
                    return 0.0;
                }
                let a = if include_a {
                    damping_coefficient(grid.r(i), w.alpha).expect("validated alpha")
                } else {
                    1.0
                };
                two_psi[i].exp() * a * v * v
            })
            .collect();
        return Ok(radial_integral(&g, grid)?);
    }

    // Log domain: per-node log contributions, combined by a max-shifted
    // exponential sum. The trapezoid end weights fold in as ln(1/2).
    let mut log_terms: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let v = f[i];
        if v == 0.0 {
            continue;
        }
        let r = grid.r(i);
        if r == 0.0 && n_dim > 1 {
            continue; // volume factor r^(n-1) kills the origin node
        }
        let mut term = two_psi[i] + 2.0 * v.abs().ln();
        if include_a {
            term += damping_coefficient(r, w.alpha).expect("validated alpha").ln();
        }
        if n_dim > 1 {
            term += (n_dim as f64 - 1.0) * r.ln();
        }
        if i == 0 || i == n - 1 {
            term += 0.5_f64.ln();
        }
        log_terms.push(term);
    }
    if log_terms.is_empty() {
        return Ok(0.0);
    }
    let peak = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = log_terms.iter().map(|&l| (l - peak).exp()).sum();
    let log_total =
        peak + sum.ln() + grid.dr().ln() + sphere_surface_coefficient(n_dim).ln();
    if log_total >= f64::MAX.ln() {
        return Err(DiagnosticsError::WeightOverflow { log_value: log_total });
    }
    Ok(log_total.exp())
}

/// Cumulative weighted data norms at t = 0.
///
/// `derivatives[j]` must hold the j-th time derivative of the solution at
/// time zero, for j = 0 ..= k_max + 1 (the zeroth entry is the data
/// itself). Gradients are formed by the radial derivative on the grid.
/// Entry k of the result is
///
/// ```text
///     I_0 = ∫ e^(2ψ(0,·)) (u² + |∇u|² + u_t²) dx,
///     I_k = ∫ e^(2ψ(0,·)) (|∂_t^(k+1) u|² + |∇ ∂_t^k u|²) dx + I_(k-1).
/// ```
pub fn initial_norms(
    derivatives: &[Field],
    w: &WeightParams,
    grid: &RadialGrid,
    k_max: usize,
) -> Result<Vec<f64>, DiagnosticsError> {
    let need = k_max + 2;
    if derivatives.len() < need {
        return Err(DiagnosticsError::MissingDerivatives {
            have: derivatives.len(),
            need,
        });
    }
    for field in &derivatives[..need] {
        field.check_grid(grid)?;
    }

    let n = grid.n_points();
    let mut weight = Vec::with_capacity(n);
    for r in grid.radii() {
        weight.push((2.0 * weight_psi(0.0, r, w)?).exp());
    }

    let level = |order: usize| -> Result<f64, DiagnosticsError> {
        let grad = radial_derivative(&derivatives[order], grid)?;
        let next = &derivatives[order + 1];
        let g: Vec<f64> = (0..n)
            .map(|i| {
                let base = if order == 0 { derivatives[0][i] * derivatives[0][i] } else { 0.0 };
                let term = base + grad[i] * grad[i] + next[i] * next[i];
                if term == 0.0 {
                    0.0
                } else {
                    weight[i] * term
                }
            })
            .collect();
        Ok(radial_integral(&g, grid)?)
    };

    let mut norms = Vec::with_capacity(k_max + 1);
    let mut running = 0.0;
    for k in 0..=k_max {
        running += level(k)?;
        norms.push(running);
    }
    Ok(norms)
}
