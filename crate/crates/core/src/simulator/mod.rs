//! Monte Carlo simulation of Poisson deposition with screening.
//!
//! Rows of any odd width are supported; the three-site row matches the
//! analytic results, wider rows have no closed form.

mod config;
mod engine;
mod estimate;
mod stats;

pub use config::{end_density_horizon, Horizon, LatticeConfig, DEFAULT_SEED};
pub use engine::{run_trial, simulate, trial_rng, Deposition, Observer, SimState};
pub use estimate::{
    estimate_bulk_density, estimate_density, estimate_end_density, run_trials, SimEstimate,
};
pub use stats::{collect_run_stats, RunStats, HORIZON_MARGIN, TRANSIENT_LAYERS};
