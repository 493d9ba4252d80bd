//! Scenario driver for the damped-wave laboratory: loads a TOML scenario,
//! runs the requested experiments against the solver crates, and writes
//! a pass/fail report plus CSV series for each measured quantity.

pub mod convergence;
pub mod emit;
pub mod error;
pub mod experiments;
pub mod report;
pub mod scenario;

pub use convergence::{convergence_study, heat_temporal_order, ConvergenceTable};
pub use emit::{emit_series, read_series};
pub use error::HarnessError;
pub use experiments::{run_experiments, run_scenario, RunContext};
pub use report::{ClaimRecord, VerificationReport};
pub use scenario::{geometric_times, ExperimentKind, Resolved, Scenario};
