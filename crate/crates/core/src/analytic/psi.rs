//! Distribution of the vertical distance between consecutive center particles.
//!
//! While the center waits (exponentially, rate 1) for its next arrival, the
//! two border columns each receive a Poisson number of particles. The next
//! center particle lands one layer above the taller border stack, so the
//! distance is `psi = 1 + S` with `S` the larger of the two border counts.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `P(psi = d)` for `d >= 1`.
///
/// Evaluates `(2/3) sum_{k=0}^{d-2} C(d+k-1, k) 3^-(d+k-1) + C(2d-2, d-1) 3^-(2d-1)`
/// with term-ratio recurrences, so no binomial or power is ever formed
/// explicitly and floating-point evaluation cannot overflow.
pub fn psi_pmf<T: Scalar>(d: u32) -> Result<T> {
    if d == 0 {
        return Err(Error::ZeroDistance);
    }
    let d = u64::from(d);
    let third = T::from_ratio(1, 3);

    // k = 0 term of the strict-maximum sum: 3^-(d-1).
    let mut term = num_traits::pow(third.clone(), (d - 1) as usize);
    let mut strict = T::zero();
    for k in 0..d.saturating_sub(1) {
        strict = strict + term.clone();
        term = term * T::from_ratio(d + k, 3 * (k + 1));
    }
    let strict = strict * T::from_ratio(2, 3);

    Ok(strict + tie_term::<T>(d))
}

/// `P(S = d)` where `S` is the maximum of two independent Poisson counts
/// accumulated over an independent exponential(1) window.
pub fn s_pmf<T: Scalar>(d: u32) -> T {
    psi_pmf(d + 1).expect("d + 1 is positive")
}

// C(2d-2, d-1) 3^-(2d-1): both borders end the window with d-1 particles.
fn tie_term<T: Scalar>(d: u64) -> T {
    let mut tie = T::from_ratio(1, 3);
    for j in 1..d {
        // C(2j, j) / C(2j-2, j-1) = 2(2j-1)/j, and two more factors of 1/3.
        tie = tie * T::from_ratio(2 * (2 * j - 1), 9 * j);
    }
    tie
}

/// Table of `P(psi = d)` for `d = 1..=max_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiPmf<T> {
    probs: Vec<T>,
}

impl<T: Scalar> PsiPmf<T> {
    pub fn new(max_d: u32) -> Result<Self> {
        if max_d == 0 {
            return Err(Error::ZeroDistance);
        }
        let probs = (1..=max_d).map(psi_pmf::<T>).collect::<Result<Vec<_>>>()?;
        Ok(PsiPmf { probs })
    }

    pub fn max_d(&self) -> u32 {
        self.probs.len() as u32
    }

    /// `P(psi = d)`, or `None` outside `1..=max_d`.
    pub fn get(&self, d: u32) -> Option<&T> {
        d.checked_sub(1).and_then(|i| self.probs.get(i as usize))
    }

    /// Probabilities in order of increasing distance, starting at `d = 1`.
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// `sum_{d=1}^{max_d} P(psi = d)`; strictly below one for every finite table.
    pub fn total(&self) -> T {
        self.probs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// `sum_{d=1}^{max_d} (d - 1) P(psi = d)`, a truncation of the mean empty run.
    pub fn mean_gap(&self) -> T {
        self.probs
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, p)| {
                acc + T::from_u64(i as u64).expect("small integer") * p.clone()
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{binomial, rational, rational_pow};
    use crate::Rational;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    // Direct transcription with explicit binomials and powers.
    fn psi_literal(d: u64) -> Rational {
        let third = rational(1, 3);
        let mut strict = Rational::zero();
        for k in 0..d.saturating_sub(1) {
            let c = Rational::from_integer(BigInt::from(binomial(d + k - 1, k)));
            strict += c * rational_pow(&third, (d + k - 1) as u32);
        }
        let c = Rational::from_integer(BigInt::from(binomial(2 * d - 2, d - 1)));
        rational(2, 3) * strict + c * rational_pow(&third, (2 * d - 1) as u32)
    }

    #[test]
    fn first_values() {
        assert_eq!(psi_pmf::<Rational>(1).unwrap(), rational(1, 3));
        assert_eq!(psi_pmf::<Rational>(2).unwrap(), rational(8, 27));
        assert_eq!(psi_pmf::<Rational>(3).unwrap(), rational(14, 81));
    }

    #[test]
    fn zero_distance_rejected() {
        assert_eq!(psi_pmf::<Rational>(0), Err(Error::ZeroDistance));
        assert_eq!(psi_pmf::<f64>(0), Err(Error::ZeroDistance));
        assert!(PsiPmf::<Rational>::new(0).is_err());
    }

    #[test]
    fn s_pmf_is_shifted_psi() {
        assert_eq!(s_pmf::<Rational>(0), rational(1, 3));
        assert_eq!(s_pmf::<Rational>(1), rational(8, 27));
        assert_eq!(s_pmf::<Rational>(2), rational(14, 81));
    }

    #[test]
    fn recurrence_matches_literal_formula() {
        for d in 1..=40 {
            assert_eq!(
                psi_pmf::<Rational>(d as u32).unwrap(),
                psi_literal(d),
                "d = {d}"
            );
        }
    }

    #[test]
    fn float_path_tracks_exact_path() {
        for d in 1..=80 {
            let exact = psi_pmf::<Rational>(d).unwrap().to_f64();
            let float = psi_pmf::<f64>(d).unwrap();
            assert!(
                (exact - float).abs() <= 1e-14 * exact.max(1e-300),
                "d = {d}"
            );
            let single = psi_pmf::<f32>(d).unwrap();
            assert!((f64::from(single) - exact).abs() <= 1e-5 * exact + 1e-30);
        }
    }

    #[test]
    fn large_distance_in_float_underflows_gracefully() {
        let p = psi_pmf::<f64>(5000).unwrap();
        assert!(p.is_finite() && p >= 0.0);
    }

    #[test]
    fn partial_sums_increase_and_approach_one() {
        let table = PsiPmf::<Rational>::new(70).unwrap();
        let mut acc = Rational::zero();
        for p in table.probs() {
            assert!(*p > Rational::zero() && *p < Rational::one());
            let next = &acc + p;
            assert!(next > acc);
            acc = next;
        }
        assert!(acc < Rational::one());
        let total = PsiPmf::<Rational>::new(60).unwrap().total();
        assert!(Rational::one() - total < rational(1, 10_000_000_000));
    }

    #[test]
    fn mean_gap_approaches_expected_run() {
        let mean = PsiPmf::<Rational>::new(200).unwrap().mean_gap().to_f64();
        assert!((1.0 + mean - (2.0 + 1.0 / 5f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn table_lookup() {
        let table = PsiPmf::<Rational>::new(3).unwrap();
        assert_eq!(table.max_d(), 3);
        assert_eq!(table.get(0), None);
        assert_eq!(table.get(2), Some(&rational(8, 27)));
        assert_eq!(table.get(4), None);
    }
}
