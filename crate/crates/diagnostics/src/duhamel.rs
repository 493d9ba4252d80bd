use crate::error::DiagnosticsError;
use crate::integrals::l2_norm;
use core_model::{damping_coefficient, Field, ProblemParams, RadialGrid};
use heat_solver::evolve_heat;
use wave_solver::WaveSnapshot;

/// Heat-solver settings used for every propagator application inside the
/// residual: step size and the θ of the implicit scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuhamelConfig {
    pub heat_dt: f64,
    pub theta: f64,
}

/// Minimum number of stored snapshots for the time quadrature.
pub const MIN_QUADRATURE_NODES: usize = 16;

/// Quadrature times for the residual: graded toward the right endpoint,
/// with a hard spacing floor.
///
/// The integrand E(t-τ)[a⁻¹ u_tt(τ)] has a boundary layer at τ = t: the
/// propagator kills the high-frequency content of u_tt within a short
/// smoothing time, so the integrand drops steeply just before the
/// endpoint, and it does so on a range of scales (each mode decays on its
/// own smoothing time). A uniform trapezoid ladder misweights that layer
/// badly. This one starts from the polynomial grading
/// τ_j = t·(1 − (1 − j/m)^2.5) and then enforces gaps of at least
/// `min_spacing` by two sweeps (right-to-left, then left-to-right), so
/// every node lands on a distinct wave step; callers should pass a little
/// more than the wave dt, e.g. 1.2 dt.
pub fn duhamel_sample_times(
    t: f64,
    count: usize,
    min_spacing: f64,
) -> Result<Vec<f64>, DiagnosticsError> {
    if !t.is_finite() || t <= 0.0 {
        return Err(DiagnosticsError::InvalidTime(t));
    }
    if !min_spacing.is_finite() || min_spacing <= 0.0 {
        return Err(DiagnosticsError::NonpositiveParameter {
            name: "min_spacing",
            value: min_spacing,
        });
    }
    if count < MIN_QUADRATURE_NODES {
        return Err(DiagnosticsError::TooFewQuadratureNodes {
            found: count,
            need: MIN_QUADRATURE_NODES,
        });
    }
    if (count as f64 - 1.0) * min_spacing > t {
        return Err(DiagnosticsError::QuadratureTooDense { count, min_spacing, t });
    }

    let m = (count - 1) as f64;
    let mut times: Vec<f64> = (0..count)
        .map(|j| t * (1.0 - (1.0 - j as f64 / m).powf(2.5)))
        .collect();
    // Right-to-left: push crowded nodes away from the pinned endpoint t.
    for j in (1..count).rev() {
        if times[j - 1] > times[j] - min_spacing {
            times[j - 1] = times[j] - min_spacing;
        }
    }
    // Left-to-right: nodes pushed below zero become a uniform prefix. The
    // density check above guarantees this sweep never reaches t.
    times[0] = 0.0;
    for j in 1..count {
        if times[j] < times[j - 1] + min_spacing {
            times[j] = times[j - 1] + min_spacing;
        }
    }
    Ok(times)
}

/// Residual of the Duhamel representation of the wave solution through the
/// heat propagator E:
///
/// ```text
///     u(t) = E(t) u(0) - ∫₀ᵗ E(t-τ) [ a⁻¹ u_tt(τ) ] dτ,
/// ```
///
/// evaluated by applying the heat solver to each stored snapshot and
/// integrating in τ by the trapezoid rule over the stored times. Returns
/// ‖u(t) - RHS‖ / ‖u(t)‖. The history must start at time zero and be
/// strictly increasing; its last snapshot defines t.
///
/// Terms are accumulated in ascending τ order, so the result is
/// deterministic for identical inputs.
pub fn duhamel_residual(
    history: &[WaveSnapshot],
    grid: &RadialGrid,
    params: &ProblemParams,
    config: &DuhamelConfig,
) -> Result<f64, DiagnosticsError> {
    let first = history.first().ok_or(DiagnosticsError::EmptyHistory)?;
    if first.t != 0.0 {
        return Err(DiagnosticsError::HistoryStart(first.t));
    }
    for snap in history {
        if snap.grid != *grid {
            return Err(DiagnosticsError::GridMismatch);
        }
    }

    // A lone snapshot at t = 0 is the empty integral: E(0) is the identity,
    // so the residual is zero by construction. Computed, not assumed.
    if history.len() == 1 {
        let reproduced = evolve_heat(
            &first.u,
            0.0,
            0.0,
            grid,
            params,
            config.heat_dt,
            config.theta,
        )?;
        let diff = first.u.linear_combination(1.0, &reproduced, -1.0)?;
        let norm = l2_norm(&first.u, grid)?;
        if norm == 0.0 {
            return Ok(0.0);
        }
        return Ok(l2_norm(&diff, grid)? / norm);
    }

    if history.len() < MIN_QUADRATURE_NODES {
        return Err(DiagnosticsError::TooFewQuadratureNodes {
            found: history.len(),
            need: MIN_QUADRATURE_NODES,
        });
    }
    for pair in history.windows(2) {
        if pair[1].t <= pair[0].t {
            return Err(DiagnosticsError::HistoryOrder);
        }
    }

    let t_final = history.last().expect("nonempty").t;
    let inv_damping: Vec<f64> = grid
        .radii()
        .map(|r| 1.0 / damping_coefficient(r, params.alpha).expect("validated alpha"))
        .collect();

    // E(t) u(0)
    let mut rhs = evolve_heat(
        &first.u,
        0.0,
        t_final,
        grid,
        params,
        config.heat_dt,
        config.theta,
    )?;

    // minus the trapezoid sum over stored times; weights from the actual
    // (possibly uneven) spacing of the history.
    let m = history.len();
    for j in 0..m {
        let left = if j == 0 { history[0].t } else { history[j - 1].t };
        let right = if j == m - 1 { history[m - 1].t } else { history[j + 1].t };
        let weight = (right - left) / 2.0;

        let integrand = Field::new(
            history[j]
                .u_tt
                .values()
                .iter()
                .zip(&inv_damping)
                .map(|(v, inv_a)| v * inv_a)
                .collect(),
        )?;
        let propagated = evolve_heat(
            &integrand,
            0.0,
            t_final - history[j].t,
            grid,
            params,
            config.heat_dt,
            config.theta,
        )?;
        rhs = rhs.linear_combination(1.0, &propagated, -weight)?;
    }

    let u_final = &history[m - 1].u;
    let diff = u_final.linear_combination(1.0, &rhs, -1.0)?;
    let norm = l2_norm(u_final, grid)?;
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(l2_norm(&diff, grid)? / norm)
}
