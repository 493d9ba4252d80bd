use core_model::{bump_initial_data, damping_coefficient, Field, RadialGrid};
use diagnostics::l2_norm;
use heat_solver::sample_heat;
use wave_solver::{max_stable_dt, run_wave};

use crate::error::HarnessError;
use crate::scenario::Scenario;

/// One refinement level of the study.
#[derive(Debug)]
pub struct ConvergenceRow {
    pub dr: f64,
    pub n_points: usize,
    pub norm_value: f64,
    pub dp_value: f64,
    pub norm_error: Option<f64>,
    pub dp_error: Option<f64>,
    pub norm_order: Option<f64>,
    pub dp_order: Option<f64>,
}

#[derive(Debug)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Observed order from the two coarsest consecutive differences,
    /// when both are resolvable.
    pub headline_norm_order: Option<f64>,
    pub headline_dp_order: Option<f64>,
    /// Whether the dp columns carry data (the temporal study has none).
    pub has_dp: bool,
}

impl ConvergenceTable {
    pub fn render(&self) -> String {
        let fmt_opt = |v: Option<f64>| match v {
            Some(x) => format!("{x:>12.4e}"),
            None => format!("{:>12}", "-"),
        };
        let fmt_ord = |v: Option<f64>| match v {
            Some(x) => format!("{x:>8.3}"),
            None => format!("{:>8}", "-"),
        };
        let mut text = format!(
            "{:>10} {:>9} {:>14} {:>12} {:>8}",
            "step", "nodes", "norm", "norm err", "order"
        );
        if self.has_dp {
            text.push_str(&format!(" {:>14} {:>12} {:>8}", "dp", "dp err", "order"));
        }
        text.push('\n');
        for row in &self.rows {
            text.push_str(&format!(
                "{:>10.6} {:>9} {:>14.6e} {} {}",
                row.dr,
                row.n_points,
                row.norm_value,
                fmt_opt(row.norm_error),
                fmt_ord(row.norm_order),
            ));
            if self.has_dp {
                text.push_str(&format!(
                    " {:>14.6e} {} {}",
                    row.dp_value,
                    fmt_opt(row.dp_error),
                    fmt_ord(row.dp_order),
                ));
            }
            text.push('\n');
        }
        match (self.headline_norm_order, self.headline_dp_order) {
            (Some(n), Some(d)) => text.push_str(&format!(
                "observed order: norm {n:.3}, profile difference {d:.3}\n"
            )),
            (Some(n), None) => {
                text.push_str(&format!("observed order: norm {n:.3}\n"))
            }
            _ => text.push_str("observed order: below resolvable error\n"),
        }
        text
    }
}

/// Consecutive-difference errors e_j = |v_j - v_{j+1}| and the orders
/// log2(e_{j-1} / e_j). For a clean order-p refinement by halving, the
/// consecutive ratio is exactly 2^p, unlike differences against the
/// finest level which overshoot.
fn errors_and_orders(values: &[f64]) -> (Vec<Option<f64>>, Vec<Option<f64>>) {
    let n = values.len();
    let floor = 1e-14 * values[n - 1].abs().max(1.0);
    let errors: Vec<Option<f64>> = (0..n)
        .map(|j| {
            if j + 1 == n {
                return None;
            }
            let e = (values[j] - values[j + 1]).abs();
            (e > floor).then_some(e)
        })
        .collect();
    let orders: Vec<Option<f64>> = (0..n)
        .map(|j| {
            if j == 0 || j + 1 == n {
                return None;
            }
            match (errors[j - 1], errors[j]) {
                (Some(coarse), Some(fine)) => Some((coarse / fine).log2()),
                _ => None,
            }
        })
        .collect();
    (errors, orders)
}

/// Self-convergence of the wave run at the scenario's final time: halve
/// dr per level (time step follows through the stability bound), compare
/// the norm and the heat-profile difference against the finest level.
pub fn convergence_study(
    scenario: &Scenario,
    levels: usize,
) -> Result<ConvergenceTable, HarnessError> {
    if levels < 3 {
        return Err(HarnessError::TooFewLevels(levels));
    }
    let resolved = scenario.resolve()?;
    let p = resolved.params;
    let t_max = resolved.t_max;
    let r_max = resolved.grid.r_max();

    // Guard every level before running any, so a cap breach at the
    // finest grid cannot waste the coarse runs first.
    for j in 0..levels {
        let dr = resolved.grid.dr() / 2f64.powi(j as i32);
        let needed = (r_max / dr).ceil() as usize + 1;
        if needed > scenario.grid.node_cap {
            return Err(HarnessError::NodeCap {
                needed,
                cap: scenario.grid.node_cap,
            });
        }
    }

    let mut drs = Vec::with_capacity(levels);
    let mut n_points = Vec::with_capacity(levels);
    let mut norms = Vec::with_capacity(levels);
    let mut dps = Vec::with_capacity(levels);
    for j in 0..levels {
        let dr = resolved.grid.dr() / 2f64.powi(j as i32);
        let grid = RadialGrid::covering(r_max, dr, p.n_dim)?;
        let u0 = bump_initial_data(&grid, p.support_radius, resolved.amplitude)?;
        let u1 =
            bump_initial_data(&grid, p.support_radius, resolved.velocity_amplitude)?;
        // Snap dt so every level lands on t_max exactly; otherwise the
        // per-level snapshot-time offset (first order in dt) would
        // swamp the discretization error being measured.
        let raw_dt = scenario.time.wave_cfl * max_stable_dt(&grid);
        let dt = t_max / (t_max / raw_dt).ceil();
        let snaps = run_wave(&grid, &p, &u0, &u1, dt, &[t_max])?;
        let snap = &snaps[0];

        let mut data_values = Vec::with_capacity(grid.n_points());
        for ((v0, v1), radius) in
            u0.values().iter().zip(u1.values()).zip(grid.radii())
        {
            let a = damping_coefficient(radius, p.alpha)?;
            data_values.push(v0 + v1 / a);
        }
        let data = Field::new(data_values)?;
        let states = sample_heat(
            &data,
            0.0,
            &[snap.t],
            &grid,
            &p,
            scenario.time.heat_dt_factor * dr,
            resolved.heat_theta,
        )?;
        let diff = snap.u.linear_combination(1.0, &states[0].1, -1.0)?;

        drs.push(dr);
        n_points.push(grid.n_points());
        norms.push(l2_norm(&snap.u, &grid)?);
        dps.push(l2_norm(&diff, &grid)?);
    }

    let (norm_errors, norm_orders) = errors_and_orders(&norms);
    let (dp_errors, dp_orders) = errors_and_orders(&dps);
    let rows = (0..levels)
        .map(|j| ConvergenceRow {
            dr: drs[j],
            n_points: n_points[j],
            norm_value: norms[j],
            dp_value: dps[j],
            norm_error: norm_errors[j],
            dp_error: dp_errors[j],
            norm_order: norm_orders[j],
            dp_order: dp_orders[j],
        })
        .collect();
    Ok(ConvergenceTable {
        rows,
        headline_norm_order: norm_orders[1],
        headline_dp_order: dp_orders[1],
        has_dp: true,
    })
}

/// Temporal self-convergence of the implicit heat stepper on a fixed
/// grid: halve dt per level, compare the final norm against the finest.
pub fn heat_temporal_order(
    scenario: &Scenario,
    levels: usize,
) -> Result<ConvergenceTable, HarnessError> {
    if levels < 3 {
        return Err(HarnessError::TooFewLevels(levels));
    }
    let resolved = scenario.resolve()?;
    let p = resolved.params;
    let grid = &resolved.grid;
    let data = bump_initial_data(grid, p.support_radius, resolved.amplitude)?;

    let mut drs = Vec::with_capacity(levels);
    let mut norms = Vec::with_capacity(levels);
    for j in 0..levels {
        let dt = resolved.heat_dt / 2f64.powi(j as i32);
        let states = sample_heat(
            &data,
            0.0,
            &[resolved.t_max],
            grid,
            &p,
            dt,
            resolved.heat_theta,
        )?;
        drs.push(dt);
        norms.push(l2_norm(&states[0].1, grid)?);
    }

    let (errors, orders) = errors_and_orders(&norms);
    let rows = (0..levels)
        .map(|j| ConvergenceRow {
            dr: drs[j],
            n_points: grid.n_points(),
            norm_value: norms[j],
            dp_value: 0.0,
            norm_error: errors[j],
            dp_error: None,
            norm_order: orders[j],
            dp_order: None,
        })
        .collect();
    Ok(ConvergenceTable {
        rows,
        headline_norm_order: orders[1],
        headline_dp_order: None,
        has_dp: false,
    })
}
