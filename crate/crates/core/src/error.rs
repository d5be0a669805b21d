use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("layer must be at least 1")]
    ZeroLayer,
    #[error("vertical distance must be at least 1")]
    ZeroDistance,
    #[error("layer {layer} exceeds the supported maximum of {max}")]
    LayerTooLarge { layer: u32, max: u32 },
    #[error("time must be finite and non-negative, got {0}")]
    InvalidTime(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("series argument must lie in [0, 1/4)")]
    OutsideConvergence,
    #[error("lattice width must be an odd integer of at least 3, got {0}")]
    InvalidWidth(usize),
    #[error("invalid horizon: {0}")]
    InvalidHorizon(String),
    #[error("site ({x}, {layer}) is outside the lattice")]
    InvalidSite { x: i64, layer: u32 },
    #[error("layer window {min}..{max} is empty or starts below layer 1")]
    InvalidWindow { min: u32, max: u32 },
    #[error("trial count must be positive")]
    ZeroTrials,
    #[error("query time {time} is beyond the simulation horizon {horizon}")]
    TimeBeyondHorizon { time: f64, horizon: f64 },
    #[error("run statistics require width 3, got {0}")]
    UnsupportedWidth(usize),
    #[error("simulation invariant violated: {0}")]
    Invariant(String),
}
