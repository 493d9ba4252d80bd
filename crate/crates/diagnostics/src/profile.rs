use crate::error::DiagnosticsError;
use crate::integrals::l2_norm;
use core_model::{damping_coefficient, Field, ProblemParams, RadialGrid};
use heat_solver::evolve_heat;
use wave_solver::WaveSnapshot;

/// Heat-solver settings for the comparison evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatRunConfig {
    pub dt: f64,
    pub theta: f64,
}

/// Distance between the wave solution and its diffusion profile:
/// ‖u(t) - E(t)[u0 + a⁻¹ u1]‖_{L²}, the quantity whose faster decay is the
/// diffusion phenomenon. The heat data u0 + a⁻¹u1 is evolved from time
/// zero to the snapshot time on the same grid.
pub fn profile_difference(
    snapshot: &WaveSnapshot,
    u0: &Field,
    u1: &Field,
    grid: &RadialGrid,
    params: &ProblemParams,
    config: &HeatRunConfig,
) -> Result<f64, DiagnosticsError> {
    if snapshot.grid != *grid {
        return Err(DiagnosticsError::GridMismatch);
    }
    u0.check_grid(grid)?;
    u1.check_grid(grid)?;

    let data = Field::new(
        u0.values()
            .iter()
            .zip(u1.values())
            .zip(grid.radii())
            .map(|((v0, v1), r)| {
                v0 + v1 / damping_coefficient(r, params.alpha).expect("validated alpha")
            })
            .collect(),
    )?;
    let profile =
        evolve_heat(&data, 0.0, snapshot.t, grid, params, config.dt, config.theta)?;
    let diff = snapshot.u.linear_combination(1.0, &profile, -1.0)?;
    l2_norm(&diff, grid)
}
