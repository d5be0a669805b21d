//! `parking`: CSV front end for exact and simulated densities of multilayer
//! parking with screening.

mod args;
mod commands;
mod csv;

use std::io::Write;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use crate::args::{LayerRange, TimeGrid};
use parking_core::simulator::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "parking", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
#[group(required = false, multiple = false)]
struct Times {
    /// Time grid START:END:STEP, endpoints included.
    #[arg(long)]
    times: Option<TimeGrid>,
    /// Single time.
    #[arg(long, value_parser = args::parse_time)]
    time: Option<f64>,
}

impl Times {
    fn grid(&self) -> Option<TimeGrid> {
        self.times
            .clone()
            .or_else(|| self.time.map(TimeGrid::single))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimMode {
    /// Occupation of single sites at given times.
    Density,
    /// Occupation of single sites at the horizon.
    End,
    /// Mean occupation of a column over a window of layers.
    Bulk,
    /// Empty-run and border-arrival statistics (width 3 only).
    Runs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompareMode {
    Density,
    End,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form time profiles rho_t(0, r) on a time grid.
    Density {
        #[arg(long, default_value = "1..4")]
        layers: LayerRange,
        #[command(flatten)]
        times: Times,
    },
    /// Exact end-densities rho_inf(0, r).
    EndDensity {
        #[arg(long, default_value = "1..4")]
        layers: LayerRange,
    },
    /// Exact distribution of the vertical distance between center particles.
    Psi {
        #[arg(long, default_value = "1..10")]
        distances: LayerRange,
    },
    /// Renewal weights w_i(r) of one layer.
    Weights {
        #[arg(long)]
        layer: u32,
    },
    /// Exact profile coefficients b_0..b_r.
    Profile {
        #[arg(long, default_value = "1..4")]
        layers: LayerRange,
    },
    /// High-layer limit and the mean empty run.
    Limit {
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Monte Carlo estimates.
    Simulate {
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, value_enum)]
        mode: SimMode,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        site: i64,
        /// Layers; the window for `bulk`.
        #[arg(long, default_value = "1..4")]
        layers: LayerRange,
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact values next to simulated ones for the three-site center column.
    Compare {
        #[arg(long, value_enum, default_value_t = CompareMode::End)]
        mode: CompareMode,
        #[arg(long, default_value = "1..4")]
        layers: LayerRange,
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Density { layers, times } => commands::density(layers, times.grid()),
        Command::EndDensity { layers } => commands::end_density(layers),
        Command::Psi { distances } => commands::psi(distances),
        Command::Weights { layer } => commands::weights(layer),
        Command::Profile { layers } => commands::profile(layers),
        Command::Limit { tolerance } => commands::limit(tolerance),
        Command::Simulate {
            width,
            mode,
            site,
            layers,
            times,
            trials,
            seed,
        } => {
            let request = commands::SimRequest {
                width,
                site,
                layers,
                times: times.grid(),
                trials,
                seed,
            };
            match mode {
                SimMode::Density => commands::simulate_density(&request),
                SimMode::End => commands::simulate_end(&request),
                SimMode::Bulk => commands::simulate_bulk(&request),
                SimMode::Runs => commands::simulate_runs(&request),
            }
        }
        Command::Compare {
            mode,
            layers,
            times,
            trials,
            seed,
        } => match mode {
            CompareMode::End => commands::compare_end(layers, trials, seed),
            CompareMode::Density => commands::compare_density(layers, times.grid(), trials, seed),
        },
    }
}

fn main() -> Result<()> {
    let output = run(Cli::parse())?;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(output.as_bytes())?;
    stdout.flush()?;
    Ok(())
}
