//! Multilayer parking with screening on a three-site lattice.
//!
//! Particles rain onto a row of columns at Poisson times; a particle landing
//! at a column settles one layer above the tallest stack among that column
//! and its two neighbours. The [`analytic`] module computes the resulting
//! center-column densities exactly, the [`simulator`] module estimates them
//! (and those of wider rows) by Monte Carlo.

pub mod analytic;
pub mod error;
pub mod exactmath;
pub mod scalar;
pub mod simulator;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact scalar for every analytic quantity.
pub type Rational = num_rational::BigRational;

pub type ExactPsiPmf = analytic::PsiPmf<Rational>;
pub type ExactWeights = analytic::RenewalWeights<Rational>;
pub type ExactProfile = analytic::DensityProfile<Rational>;
pub type FloatProfile = analytic::DensityProfile<f64>;
