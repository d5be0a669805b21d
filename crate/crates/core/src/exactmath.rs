//! Arbitrary-precision combinatorics and rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// `num/den` as an exact rational in lowest terms.
///
/// Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // acc holds C(n - k + i, i) after step i, so each division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact `base^exp`; `exp = 0` yields one (including for a zero base).
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Decimal rendering of an exact rational rounded (half away from zero) to
/// `digits` significant digits, in positional notation.
///
/// Zero renders as `"0"`. `digits` must be at least one.
pub fn to_decimal(value: &Rational, digits: u32) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    let ten = BigInt::from(10u8);

    let mut exponent = decimal_exponent_estimate(&magnitude);
    while pow10(exponent) > magnitude {
        exponent -= 1;
    }
    while pow10(exponent + 1) <= magnitude {
        exponent += 1;
    }

    let shift = digits as i64 - 1 - exponent;
    let scaled = &magnitude * pow10(shift);
    let half = rational(1, 2);
    let mut mantissa = (scaled + half).floor().to_integer();
    if mantissa >= ten.pow(digits) {
        mantissa /= &ten;
        exponent += 1;
    }

    let digit_str = mantissa.to_string();
    debug_assert_eq!(digit_str.len(), digits as usize);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exponent - 1) as usize));
        out.push_str(&digit_str);
    } else if (exponent as u64) < digits as u64 - 1 {
        let (int_part, frac_part) = digit_str.split_at(exponent as usize + 1);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac_part);
    } else {
        out.push_str(&digit_str);
        out.extend(std::iter::repeat_n(
            '0',
            (exponent - digits as i64 + 1) as usize,
        ));
    }
    out
}

fn pow10(exp: i64) -> Rational {
    let p = BigInt::from(10u8).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

// Within one of floor(log10(value)); the caller corrects the remainder.
fn decimal_exponent_estimate(value: &Rational) -> i64 {
    let bits = value.numer().bits() as i64 - value.denom().bits() as i64;
    (bits as f64 * std::f64::consts::LOG10_2).floor() as i64
}
