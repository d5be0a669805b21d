//! Closed-form densities of the three-site parking system with screening.
//!
//! Every function is generic over [`Scalar`](crate::Scalar); instantiate with
//! [`Rational`](crate::Rational) for exact values or `f64` for speed.

mod psi;
mod renewal;
mod runs;

pub use psi::{psi_pmf, s_pmf, PsiPmf};
pub use renewal::{
    density_at, density_profile, end_density, end_density_sequence, renewal_weights,
    renewal_weights_naive, DensityProfile, RenewalWeights, NAIVE_MAX_LAYER,
};
pub use runs::{
    central_binomial_series, cond_expected_run, expected_run, expected_run_series, limit_density,
    run_count_pmf, QuadraticSurd, SeriesSum, EXPECTED_RUN, LIMIT_DENSITY,
};
