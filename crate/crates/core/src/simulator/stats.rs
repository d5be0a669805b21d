//! Empty-run and border-arrival statistics of the center column.

use crate::error::{Error, Result};
use crate::simulator::config::LatticeConfig;
use crate::simulator::engine::{simulate, Deposition};
use crate::simulator::estimate::{run_trials, SimEstimate};

/// Windows starting below this layer are discarded as transient.
pub const TRANSIENT_LAYERS: u32 = 10;

/// Windows starting within this much time of the horizon are discarded, so
/// that censoring by the horizon cannot bias the kept windows.
pub const HORIZON_MARGIN: f64 = 30.0;

/// Histograms over the windows between consecutive center arrivals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    /// `gap_counts[x]`: windows that left `x` empty center sites.
    pub gap_counts: Vec<u64>,
    /// `border_counts[n]`: windows with `n` border arrivals.
    pub border_counts: Vec<u64>,
}

fn bump(hist: &mut Vec<u64>, at: usize) {
    if hist.len() <= at {
        hist.resize(at + 1, 0);
    }
    hist[at] += 1;
}

impl RunStats {
    pub fn windows(&self) -> u64 {
        self.gap_counts.iter().sum()
    }

    pub fn merge(&mut self, other: &RunStats) {
        for (hist, add) in [
            (&mut self.gap_counts, &other.gap_counts),
            (&mut self.border_counts, &other.border_counts),
        ] {
            if hist.len() < add.len() {
                hist.resize(add.len(), 0);
            }
            for (h, a) in hist.iter_mut().zip(add) {
                *h += a;
            }
        }
    }

    /// Mean empty run, pooled over windows (which are independent).
    pub fn mean_gap(&self) -> Option<SimEstimate> {
        let n = self.windows();
        if n == 0 {
            return None;
        }
        let nf = n as f64;
        let mean = self
            .gap_counts
            .iter()
            .enumerate()
            .map(|(x, &c)| x as f64 * c as f64)
            .sum::<f64>()
            / nf;
        let variance = if n > 1 {
            self.gap_counts
                .iter()
                .enumerate()
                .map(|(x, &c)| c as f64 * (x as f64 - mean).powi(2))
                .sum::<f64>()
                / (nf - 1.0)
        } else {
            0.0
        };
        Some(SimEstimate {
            mean,
            stderr: (variance / nf).sqrt(),
            trials: n,
            unfrozen: 0,
        })
    }

    /// Empirical `P(X = gap)`.
    pub fn gap_probability(&self, gap: usize) -> Option<SimEstimate> {
        proportion(&self.gap_counts, gap)
    }

    /// Empirical `P(N = n)`.
    pub fn border_count_probability(&self, n: usize) -> Option<SimEstimate> {
        proportion(&self.border_counts, n)
    }
}

fn proportion(hist: &[u64], at: usize) -> Option<SimEstimate> {
    let total: u64 = hist.iter().sum();
    (total > 0).then(|| SimEstimate::from_successes(hist.get(at).copied().unwrap_or(0), total))
}

/// Collects run statistics of the three-site system over `trials` trials.
///
/// A window runs from one center arrival to the next. It is kept when the
/// earlier center particle sits at layer `TRANSIENT_LAYERS` or above and the
/// window opens at least `HORIZON_MARGIN` before the horizon.
pub fn collect_run_stats(config: &LatticeConfig, trials: u64) -> Result<RunStats> {
    if config.width() != 3 {
        return Err(Error::UnsupportedWidth(config.width()));
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let horizon = config
        .horizon_time()
        .ok_or_else(|| Error::InvalidHorizon("run statistics need a time horizon".into()))?;
    let last_start = horizon - HORIZON_MARGIN;

    let per_trial = run_trials(config.seed(), trials, |rng| {
        let mut stats = RunStats::default();
        let mut previous: Option<(f64, u32)> = None;
        let mut border_arrivals = 0usize;
        simulate(config, rng, &mut |e: &Deposition| {
            if e.position != 0 {
                border_arrivals += 1;
                return;
            }
            if let Some((start, height)) = previous {
                if height >= TRANSIENT_LAYERS && start <= last_start {
                    bump(&mut stats.gap_counts, (e.height - height - 1) as usize);
                    bump(&mut stats.border_counts, border_arrivals);
                }
            }
            previous = Some((e.time, e.height));
            border_arrivals = 0;
        });
        stats
    });

    let mut total = RunStats::default();
    for stats in &per_trial {
        total.merge(stats);
    }
    Ok(total)
}
