//! Scalar abstraction shared by the analytic formulas.
//!
//! Every closed-form quantity is written once against [`Scalar`] and can be
//! evaluated either exactly (with [`Rational`](crate::Rational)) or in
//! floating point (`f64`, `f32`).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A field element the analytic module can compute with.
pub trait Scalar: Clone + Debug + PartialOrd + Num + FromPrimitive + Send + Sync + 'static {
    /// The value `num / den`. `den` must be nonzero.
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Nearest `f64` (saturating to infinities, flushing to zero).
    fn to_f64(&self) -> f64;

    /// Whether arithmetic on this type is exact.
    const EXACT: bool;
}

impl Scalar for f64 {
    #[inline]
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    #[inline]
    fn to_f64(&self) -> f64 {
        *self
    }

    const EXACT: bool = false;
}

impl Scalar for f32 {
    #[inline]
    fn from_ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    #[inline]
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    const EXACT: bool = false;
}

impl Scalar for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Out of f64 range entirely; only the sign survives.
            if self.numer().sign() == num_bigint::Sign::Minus {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    const EXACT: bool = true;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_constructors_agree() {
        let exact = <BigRational as Scalar>::from_ratio(2, 4);
        assert_eq!(exact, BigRational::new(1.into(), 2.into()));
        assert_eq!(<f64 as Scalar>::from_ratio(1, 4), 0.25);
        assert_eq!(<f32 as Scalar>::from_ratio(3, 4), 0.75f32);
    }

    #[test]
    fn rational_to_f64_handles_huge_denominators() {
        let tiny = BigRational::new(1.into(), BigInt::from(3u8).pow(1000));
        assert_eq!(Scalar::to_f64(&tiny), 0.0);
        let third = <BigRational as Scalar>::from_ratio(1, 3);
        assert!((Scalar::to_f64(&third) - 1.0 / 3.0).abs() < 1e-16);
    }
}
