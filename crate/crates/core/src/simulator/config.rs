use std::ops::RangeInclusive;

use crate::analytic::LIMIT_DENSITY;
use crate::error::{Error, Result};

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_140_601;

/// When a trial stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    /// Stop at this time; arrivals after it are discarded.
    Time(f64),
    /// Stop after this many depositions.
    Particles(u64),
}

/// Geometry, stopping rule and seed of a simulation.
///
/// Active positions are `-(m-1)/2 ..= (m-1)/2`, each receiving particles at
/// rate one. One ghost column beyond each end never receives a particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    width: usize,
    horizon: Horizon,
    seed: u64,
}

impl LatticeConfig {
    pub fn new(width: usize, horizon: Horizon, seed: u64) -> Result<Self> {
        if width < 3 || width.is_multiple_of(2) {
            return Err(Error::InvalidWidth(width));
        }
        validate_horizon(horizon)?;
        Ok(LatticeConfig {
            width,
            horizon,
            seed,
        })
    }

    /// The three-site system with a time horizon.
    pub fn three_site(horizon_time: f64, seed: u64) -> Result<Self> {
        Self::new(3, Horizon::Time(horizon_time), seed)
    }

    pub fn with_horizon(self, horizon: Horizon) -> Result<Self> {
        validate_horizon(horizon)?;
        Ok(LatticeConfig { horizon, ..self })
    }

    pub fn with_seed(self, seed: u64) -> Self {
        LatticeConfig { seed, ..self }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn horizon(&self) -> Horizon {
        self.horizon
    }

    pub fn horizon_time(&self) -> Option<f64> {
        match self.horizon {
            Horizon::Time(t) => Some(t),
            Horizon::Particles(_) => None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn half_width(&self) -> i64 {
        (self.width as i64 - 1) / 2
    }

    pub fn positions(&self) -> RangeInclusive<i64> {
        -self.half_width()..=self.half_width()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.positions().contains(&x)
    }

    pub(crate) fn check_site(&self, x: i64, layer: u32) -> Result<()> {
        if !self.contains(x) || layer == 0 {
            return Err(Error::InvalidSite { x, layer });
        }
        Ok(())
    }
}

fn validate_horizon(horizon: Horizon) -> Result<()> {
    match horizon {
        Horizon::Time(t) if !(t.is_finite() && t > 0.0) => Err(Error::InvalidHorizon(format!(
            "horizon time must be positive and finite, got {t}"
        ))),
        Horizon::Particles(0) => Err(Error::InvalidHorizon(
            "particle cap must be positive".to_string(),
        )),
        _ => Ok(()),
    }
}

/// Default horizon for freezing layer `layer`: long enough that the
/// expected column top, taken conservatively as `T * p0`, exceeds `2 layer + 20`.
pub fn end_density_horizon(layer: u32) -> f64 {
    (2.0 * f64::from(layer) + 20.0) / LIMIT_DENSITY.to_f64()
}
