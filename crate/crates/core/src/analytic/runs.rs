//! High-layer limit through the mean run of empty center sites.
//!
//! Between two center arrivals the borders receive `N` particles in total,
//! each independently left or right; the empty run above the earlier center
//! particle is the larger of the two border counts. Averaging over the
//! geometric law of `N` gives the mean run, and the limit density is
//! `1 / (1 + mean run)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// A number of the form `(integer + surd_coeff * sqrt(radicand)) / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub integer: i64,
    pub surd_coeff: i64,
    pub radicand: u64,
    pub denominator: u64,
}

impl QuadraticSurd {
    pub fn to_f64(self) -> f64 {
        (self.integer as f64 + self.surd_coeff as f64 * (self.radicand as f64).sqrt())
            / self.denominator as f64
    }
}

/// `(10 - sqrt 5) / 19`, the high-layer end-density of every active column.
pub const LIMIT_DENSITY: QuadraticSurd = QuadraticSurd {
    integer: 10,
    surd_coeff: -1,
    radicand: 5,
    denominator: 19,
};

/// `1 + 1/sqrt 5 = (5 + sqrt 5) / 5`, the mean empty run in the center column.
pub const EXPECTED_RUN: QuadraticSurd = QuadraticSurd {
    integer: 5,
    surd_coeff: 1,
    radicand: 5,
    denominator: 5,
};

pub fn limit_density() -> f64 {
    LIMIT_DENSITY.to_f64()
}

/// `P(N = n) = (1/3)(2/3)^n`: border arrivals before the next center arrival.
pub fn run_count_pmf<T: Scalar>(n: u32) -> T {
    T::from_ratio(1, 3) * num_traits::pow(T::from_ratio(2, 3), n as usize)
}

/// `E(X | N = n)` from the parity-split closed forms.
///
/// With `c_k = C(2k, k) / 4^k`: `k (1 + c_k)` for `n = 2k` and
/// `(2k + 1)/2 (1 + c_k)` for `n = 2k + 1`.
pub fn cond_expected_run<T: Scalar>(n: u32) -> T {
    let k = u64::from(n / 2);
    let central = central_ratio::<T>(k);
    let factor = if n.is_multiple_of(2) {
        T::from_u64(k).expect("small integer")
    } else {
        T::from_ratio(2 * k + 1, 2)
    };
    factor.clone() + factor * central
}

// C(2k, k) / 4^k by the ratio (2j - 1) / (2j).
fn central_ratio<T: Scalar>(k: u64) -> T {
    (1..=k).fold(T::one(), |acc, j| acc * T::from_ratio(2 * j - 1, 2 * j))
}

/// Result of summing the mean-run series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum {
    /// Exact partial sum over `k = 0..terms`.
    pub partial: Rational,
    pub terms: u64,
    /// Rigorous upper bound on the omitted tail.
    pub tail_bound: f64,
}

impl SeriesSum {
    pub fn value(&self) -> f64 {
        self.partial.to_f64()
    }
}

/// Sums `sum_k [E(X|N=2k) P(N=2k) + E(X|N=2k+1) P(N=2k+1)]` in exact arithmetic.
///
/// Stops once the latest paired term is below `tolerance / 10` and the tail
/// bound is below `tolerance`. Since `c_k <= 1`, the `k`-th pair is at most
/// `g(k) = (4/9)^k (10k + 2) / 9`, and `g(j+1)/g(j)` decreases in `j`, which
/// bounds the tail by a geometric series.
pub fn expected_run_series(tolerance: f64) -> Result<SeriesSum> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    let mut partial = Rational::from_integer(0.into());
    let mut k: u64 = 0;
    loop {
        let n = (2 * k) as u32;
        let pair = cond_expected_run::<Rational>(n) * run_count_pmf::<Rational>(n)
            + cond_expected_run::<Rational>(n + 1) * run_count_pmf::<Rational>(n + 1);
        partial += &pair;
        k += 1;

        let tail_bound = pair_tail_bound(k);
        if pair.to_f64() < tolerance / 10.0 && tail_bound < tolerance {
            return Ok(SeriesSum {
                partial,
                terms: k,
                tail_bound,
            });
        }
    }
}

// Bound on sum_{j >= from} of the paired terms; valid for from >= 1.
fn pair_tail_bound(from: u64) -> f64 {
    let g = |j: f64| (4.0f64 / 9.0).powf(j) * (10.0 * j + 2.0) / 9.0;
    let j = from as f64;
    let ratio = (4.0 / 9.0) * (10.0 * j + 12.0) / (10.0 * j + 2.0);
    g(j) / (1.0 - ratio)
}

/// Mean empty run `EX`, within `tolerance` of `1 + 1/sqrt 5`.
pub fn expected_run(tolerance: f64) -> Result<f64> {
    expected_run_series(tolerance).map(|s| s.value())
}

/// Partial sums up to `k_max` of `sum_k C(2k,k) x^k` and `sum_k k C(2k,k) x^k`.
///
/// The full series converge to `1/sqrt(1-4x)` and `2x/(1-4x)^{3/2}`.
pub fn central_binomial_series<T: Scalar>(x: &T, k_max: u32) -> Result<(T, T)> {
    if *x < T::zero() || *x >= T::from_ratio(1, 4) {
        return Err(Error::OutsideConvergence);
    }
    let mut plain = T::one();
    let mut weighted = T::zero();
    let mut term = T::one();
    for k in 1..=u64::from(k_max) {
        // C(2k, k) = C(2k-2, k-1) * 2(2k-1)/k.
        term = term * T::from_ratio(2 * (2 * k - 1), k) * x.clone();
        plain = plain + term.clone();
        weighted = weighted + T::from_u64(k).expect("small integer") * term.clone();
    }
    Ok((plain, weighted))
}
