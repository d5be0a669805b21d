//! Monte Carlo estimators over independent trials.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simulator::config::{Horizon, LatticeConfig};
use crate::simulator::engine::{simulate, trial_rng, Deposition};

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub stderr: f64,
    pub trials: u64,
    /// Trials whose queried layers were not yet frozen at the horizon.
    pub unfrozen: u64,
}

impl SimEstimate {
    /// Estimate from per-trial samples, summed in slice order.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let variance = if samples.len() > 1 {
            samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        SimEstimate {
            mean,
            stderr: (variance / n).sqrt(),
            trials: samples.len() as u64,
            unfrozen: 0,
        }
    }

    /// Estimate of a probability from `successes` out of `trials` indicator samples.
    pub fn from_successes(successes: u64, trials: u64) -> Self {
        let n = trials as f64;
        let k = successes as f64;
        let mean = k / n;
        let variance = if trials > 1 {
            (k * (1.0 - mean).powi(2) + (n - k) * mean * mean) / (n - 1.0)
        } else {
            0.0
        };
        SimEstimate {
            mean,
            stderr: (variance / n).sqrt(),
            trials,
            unfrozen: 0,
        }
    }

    /// Whether every trial had its queried layers frozen.
    pub fn is_frozen(&self) -> bool {
        self.unfrozen == 0
    }

    /// `(mean - exact) / stderr`; zero when both the deviation and the
    /// standard error vanish.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = self.mean - exact;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    pub fn within(&self, exact: f64, sigmas: f64) -> bool {
        self.z_score(exact).abs() <= sigmas
    }
}

/// Runs `trials` independent trials on the current rayon pool and returns
/// their results in trial order.
pub fn run_trials<T, F>(seed: u64, trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|trial| f(&mut trial_rng(seed, trial)))
        .collect()
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    Ok(())
}

/// Fraction of trials with site `(x, layer)` occupied at time `t`.
///
/// Each trial is cut at `t`; the arrival stream is the same prefix the full
/// horizon would produce.
pub fn estimate_density(
    config: &LatticeConfig,
    x: i64,
    layer: u32,
    t: f64,
    trials: u64,
) -> Result<SimEstimate> {
    check_trials(trials)?;
    config.check_site(x, layer)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidTime(t));
    }
    let horizon = config.horizon_time().ok_or_else(|| {
        Error::InvalidHorizon("time-dependent densities need a time horizon".into())
    })?;
    if t > horizon {
        return Err(Error::TimeBeyondHorizon { time: t, horizon });
    }
    if t == 0.0 {
        return Ok(SimEstimate::from_successes(0, trials));
    }
    let cut = config.with_horizon(Horizon::Time(t))?;

    let hits = run_trials(config.seed(), trials, |rng| {
        let mut hit = false;
        simulate(&cut, rng, &mut |e: &Deposition| {
            hit |= e.position == x && e.height == layer;
        });
        hit
    });
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    Ok(SimEstimate::from_successes(successes, trials))
}

/// Fraction of trials with `(x, layer)` occupied at the horizon, flagging
/// trials where the site was not yet frozen.
pub fn estimate_end_density(
    config: &LatticeConfig,
    x: i64,
    layer: u32,
    trials: u64,
) -> Result<SimEstimate> {
    check_trials(trials)?;
    config.check_site(x, layer)?;

    let outcomes = run_trials(config.seed(), trials, |rng| {
        let mut hit = false;
        let state = simulate(config, rng, &mut |e: &Deposition| {
            hit |= e.position == x && e.height == layer;
        });
        (hit, state.is_frozen(x, layer))
    });
    let successes = outcomes.iter().filter(|o| o.0).count() as u64;
    let mut estimate = SimEstimate::from_successes(successes, trials);
    estimate.unfrozen = outcomes.iter().filter(|o| !o.1).count() as u64;
    Ok(estimate)
}

/// Mean occupied fraction of column `x` over layers `r_min..=r_max`.
pub fn estimate_bulk_density(
    config: &LatticeConfig,
    x: i64,
    r_min: u32,
    r_max: u32,
    trials: u64,
) -> Result<SimEstimate> {
    check_trials(trials)?;
    if r_min == 0 || r_max < r_min {
        return Err(Error::InvalidWindow {
            min: r_min,
            max: r_max,
        });
    }
    config.check_site(x, r_min)?;
    let window = f64::from(r_max - r_min + 1);

    let outcomes = run_trials(config.seed(), trials, |rng| {
        let mut occupied = 0u32;
        let state = simulate(config, rng, &mut |e: &Deposition| {
            if e.position == x && (r_min..=r_max).contains(&e.height) {
                occupied += 1;
            }
        });
        (f64::from(occupied) / window, state.is_frozen(x, r_max))
    });
    let samples: Vec<f64> = outcomes.iter().map(|o| o.0).collect();
    let mut estimate = SimEstimate::from_samples(&samples);
    estimate.unfrozen = outcomes.iter().filter(|o| !o.1).count() as u64;
    Ok(estimate)
}
