use std::fmt;
use std::path::Path;

use core_model::{ProblemParams, RadialGrid, WeightParams};
use serde::Deserialize;
use wave_solver::max_stable_dt;

use crate::error::HarnessError;

/// The experiments a scenario may request, in the vocabulary of the
/// scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Pure quadrature of the closed-form decay profile; no solver runs.
    ProfileCheck,
    /// Heat run; fitted norm decay against the predicted exponent.
    VerifyHeat,
    /// Wave run; fitted norm decay bound and the light-cone tail check.
    VerifyWave,
    /// Wave minus evolved heat profile; exponent gap and monotonicity.
    VerifyDp,
    /// Weighted space-time integrals of u, u_t and their gradients.
    VerifyTh2,
    /// Step dissipation audit plus the localized-mass envelope.
    VerifyLem3,
    /// Solution-representation residual and its refinement ratio.
    Duhamel,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::ProfileCheck => "profile-check",
            ExperimentKind::VerifyHeat => "verify-heat",
            ExperimentKind::VerifyWave => "verify-wave",
            ExperimentKind::VerifyDp => "verify-dp",
            ExperimentKind::VerifyTh2 => "verify-th2",
            ExperimentKind::VerifyLem3 => "verify-lem3",
            ExperimentKind::Duhamel => "duhamel",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub dim: usize,
    pub alpha: f64,
    /// Support radius of the initial bump.
    #[serde(default = "one")]
    pub support: f64,
    /// Peak of the initial displacement bump.
    #[serde(default = "one")]
    pub amplitude: f64,
    /// Peak of the initial velocity bump; half the displacement
    /// amplitude unless set.
    #[serde(default)]
    pub velocity_amplitude: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WeightsSection {
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for WeightsSection {
    fn default() -> Self {
        Self { delta: 0.1, epsilon: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub dr: f64,
    /// Slack added to the light-cone radius requirement.
    pub margin: f64,
    /// Refuse grids needing more nodes than this.
    pub node_cap: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { dr: 0.02, margin: 1.0, node_cap: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeSection {
    pub t_max: f64,
    /// Wave step as a fraction of the stability limit.
    pub wave_cfl: f64,
    /// Heat step as a multiple of dr.
    pub heat_dt_factor: f64,
    /// 1 = backward Euler, 0.5 = trapezoidal.
    pub heat_theta: f64,
    /// Geometric sample count on [1, t_max].
    pub samples: usize,
}

impl Default for TimeSection {
    fn default() -> Self {
        Self {
            t_max: 200.0,
            wave_cfl: 0.9,
            heat_dt_factor: 0.9,
            heat_theta: 1.0,
            samples: 80,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DuhamelSection {
    pub t_eval: f64,
    pub nodes: usize,
    /// The residual is dominated by the time discretization, so the
    /// defaults step well below the stability limit.
    pub wave_cfl: f64,
    pub heat_dt_factor: f64,
    pub theta: f64,
}

impl Default for DuhamelSection {
    fn default() -> Self {
        Self {
            t_eval: 5.0,
            nodes: 64,
            wave_cfl: 0.225,
            heat_dt_factor: 0.25,
            theta: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RegionSection {
    pub rho: f64,
    /// The localization threshold mu as a fraction of 2A.
    pub mu_factor: f64,
}

impl Default for RegionSection {
    fn default() -> Self {
        Self { rho: 0.25, mu_factor: 0.5 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: "out".into() }
    }
}

fn one() -> f64 {
    1.0
}

/// A deserialized scenario file. `resolve` turns it into validated,
/// ready-to-run objects.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub experiments: Vec<ExperimentKind>,
    pub problem: ProblemSection,
    #[serde(default)]
    pub weights: WeightsSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub time: TimeSection,
    #[serde(default)]
    pub duhamel: DuhamelSection,
    #[serde(default)]
    pub region: RegionSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Everything derived from a scenario: validated parameters, the grid
/// sized by the radius policy, steps, and the sample schedule.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: ProblemParams,
    pub weights: WeightParams,
    pub grid: RadialGrid,
    pub amplitude: f64,
    pub velocity_amplitude: f64,
    pub wave_dt: f64,
    pub heat_dt: f64,
    pub heat_theta: f64,
    pub t_max: f64,
    pub sample_times: Vec<f64>,
    pub fit_window: (f64, f64),
    /// Radius the wave run needs: cone plus margin.
    pub r_wave: f64,
    /// Radius the heat run needs: the self-similar spread.
    pub r_heat: f64,
}

impl Resolved {
    /// Run-log header describing the resolved configuration. Everything
    /// here is derived from the scenario alone, so reports stay
    /// byte-reproducible.
    pub fn header(&self) -> String {
        let p = &self.params;
        format!(
            "problem: n={} alpha={} support={} amplitude={} velocity_amplitude={}\n\
             grid: dr={} r_max={:.4} nodes={} (wave needs {:.4}, heat needs {:.4})\n\
             time: t_max={} wave_dt={:.6} heat_dt={:.6} theta={}\n\
             fit window: [{}, {}], {} geometric samples on [1, {}]\n",
            p.n_dim,
            p.alpha,
            p.support_radius,
            self.amplitude,
            self.velocity_amplitude,
            self.grid.dr(),
            self.grid.r_max(),
            self.grid.n_points(),
            self.r_wave,
            self.r_heat,
            self.t_max,
            self.wave_dt,
            self.heat_dt,
            self.heat_theta,
            self.fit_window.0,
            self.fit_window.1,
            self.sample_times.len(),
            self.t_max,
        )
    }
}

/// Strictly increasing geometric ladder from `lo` to `hi`, inclusive.
pub fn geometric_times(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let m = (count - 1) as f64;
    (0..count).map(|j| lo * (hi / lo).powf(j as f64 / m)).collect()
}

fn require(
    ok: bool,
    name: &'static str,
    requirement: &'static str,
    value: f64,
) -> Result<(), HarnessError> {
    if ok {
        Ok(())
    } else {
        Err(HarnessError::BadParameter { name, requirement, value })
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| {
            HarnessError::Read { path: path.display().to_string(), source }
        })?;
        Ok(toml::from_str(&text)?)
    }

    pub fn resolve(&self) -> Result<Resolved, HarnessError> {
        let p = &self.problem;
        let params = ProblemParams::new(p.dim, p.alpha, p.support)?;
        let weights =
            WeightParams::new(p.alpha, self.weights.delta, self.weights.epsilon)?;

        require(p.amplitude.is_finite(), "problem.amplitude", "finite", p.amplitude)?;
        let velocity_amplitude = p.velocity_amplitude.unwrap_or(0.5 * p.amplitude);
        require(
            velocity_amplitude.is_finite(),
            "problem.velocity_amplitude",
            "finite",
            velocity_amplitude,
        )?;

        let t = &self.time;
        if !(t.t_max.is_finite() && t.t_max > 10.0) {
            return Err(HarnessError::TMaxTooSmall(t.t_max));
        }
        if t.samples < 20 {
            return Err(HarnessError::TooFewSamples(t.samples));
        }
        require(
            t.wave_cfl.is_finite() && t.wave_cfl > 0.0 && t.wave_cfl <= 1.0,
            "time.wave_cfl",
            "in (0, 1]",
            t.wave_cfl,
        )?;
        require(
            t.heat_dt_factor.is_finite() && t.heat_dt_factor > 0.0,
            "time.heat_dt_factor",
            "positive",
            t.heat_dt_factor,
        )?;
        require(
            t.heat_theta.is_finite() && (0.5..=1.0).contains(&t.heat_theta),
            "time.heat_theta",
            "in [0.5, 1]",
            t.heat_theta,
        )?;

        let d = &self.duhamel;
        require(
            d.t_eval.is_finite() && d.t_eval > 0.0,
            "duhamel.t_eval",
            "positive",
            d.t_eval,
        )?;
        require(
            d.nodes >= diagnostics::MIN_QUADRATURE_NODES,
            "duhamel.nodes",
            "at least 16",
            d.nodes as f64,
        )?;
        require(
            d.wave_cfl.is_finite() && d.wave_cfl > 0.0 && d.wave_cfl <= 1.0,
            "duhamel.wave_cfl",
            "in (0, 1]",
            d.wave_cfl,
        )?;
        require(
            d.heat_dt_factor.is_finite() && d.heat_dt_factor > 0.0,
            "duhamel.heat_dt_factor",
            "positive",
            d.heat_dt_factor,
        )?;
        require(
            d.theta.is_finite() && (0.5..=1.0).contains(&d.theta),
            "duhamel.theta",
            "in [0.5, 1]",
            d.theta,
        )?;

        let reg = &self.region;
        require(
            reg.rho.is_finite() && reg.rho > 0.0 && reg.rho < 1.0 - p.alpha,
            "region.rho",
            "in (0, 1 - alpha)",
            reg.rho,
        )?;
        require(
            reg.mu_factor.is_finite() && reg.mu_factor > 0.0 && reg.mu_factor < 1.0,
            "region.mu_factor",
            "in (0, 1)",
            reg.mu_factor,
        )?;

        let g = &self.grid;
        require(g.dr.is_finite() && g.dr > 0.0, "grid.dr", "positive", g.dr)?;
        require(
            g.margin.is_finite() && g.margin >= 0.0,
            "grid.margin",
            "nonnegative",
            g.margin,
        )?;

        // Radius policy: the wave needs the light cone plus slack, the
        // heat flow needs room for the self-similar spread.
        let r_wave = t.t_max + p.support + g.margin;
        let r_heat = 8.0 * (1.0 + t.t_max).powf(1.0 / (2.0 - p.alpha));
        let r_max = r_wave.max(r_heat);
        let needed = (r_max / g.dr).ceil() as usize + 1;
        if needed > g.node_cap {
            return Err(HarnessError::NodeCap { needed, cap: g.node_cap });
        }
        let grid = RadialGrid::covering(r_max, g.dr, p.dim)?;

        Ok(Resolved {
            params,
            weights,
            amplitude: p.amplitude,
            velocity_amplitude,
            wave_dt: t.wave_cfl * max_stable_dt(&grid),
            heat_dt: t.heat_dt_factor * g.dr,
            heat_theta: t.heat_theta,
            t_max: t.t_max,
            sample_times: geometric_times(1.0, t.t_max, t.samples),
            fit_window: (t.t_max / 4.0, t.t_max),
            r_wave,
            r_heat,
            grid,
        })
    }
}
