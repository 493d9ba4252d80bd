use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use core_model::{theoretical_rates, ProblemParams};
use harness_cli::{convergence_study, heat_temporal_order, run_scenario, Scenario};

#[derive(Parser)]
#[command(name = "diffusim", about = "numerical laboratory for the damped wave equation", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario's experiments and write the report
    Run {
        /// Scenario TOML file
        scenario: PathBuf,
        /// Output directory (overrides the scenario's setting)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for independent experiments
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Grid self-convergence study of the wave run
    Convergence {
        scenario: PathBuf,
        /// Refinement levels, halving dr each time
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Study the heat stepper's time discretization instead
        #[arg(long)]
        temporal: bool,
    },
    /// Print the predicted decay exponents for a parameter set
    Rates {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        /// Highest time-derivative order to tabulate
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

fn real_main() -> Result<bool, harness_cli::HarnessError> {
    match Cli::parse().cmd {
        Cmd::Run { scenario, out, jobs } => {
            let (report, header) = run_scenario(&scenario, out.as_deref(), jobs)?;
            print!("{}", report.render_table(&header));
            Ok(report.all_pass())
        }
        Cmd::Convergence { scenario, levels, temporal } => {
            let scenario = Scenario::load(&scenario)?;
            let table = if temporal {
                heat_temporal_order(&scenario, levels)?
            } else {
                convergence_study(&scenario, levels)?
            };
            print!("{}", table.render());
            Ok(true)
        }
        Cmd::Rates { n, alpha, k } => {
            let params = ProblemParams { n_dim: n, alpha, support_radius: 1.0 };
            println!(
                "{:>3} {:>12} {:>14} {:>16}",
                "k", "l2", "weighted sq", "weighted grad sq"
            );
            for order in 0..=k {
                let t = theoretical_rates(&params, order)?;
                println!(
                    "{:>3} {:>12.6} {:>14.6} {:>16.6}",
                    order, t.l2_rate, t.weighted_sq_rate, t.weighted_grad_sq_rate
                );
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
