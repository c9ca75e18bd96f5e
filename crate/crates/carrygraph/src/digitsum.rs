//! Binary digit sums, carries, and 2-adic valuations.
//!
//! Everything here is exact: values are arbitrary-precision [`BigUint`]s and
//! valuations of (multi)nomial coefficients are computed by carry counting
//! (Kummer's theorem), never by building factorials.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DigitSumError {
    #[error("carry count of an empty summand list is undefined")]
    EmptySummands,
    #[error("the 2-adic valuation of 0 is infinite")]
    ValuationOfZero,
    #[error("width {width} is too small for a {needed}-bit value")]
    WidthTooSmall { width: usize, needed: usize },
}

/// Binary digit sum: the number of 1s in the binary expansion of `x`.
pub fn s2(x: &BigUint) -> u64 {
    x.count_ones()
}

/// Number of carries when the `xs` are added together in binary,
/// i.e. `sum s2(x_i) - s2(sum x_i)`.
pub fn carries_in_sum(xs: &[BigUint]) -> Result<u64, DigitSumError> {
    if xs.is_empty() {
        return Err(DigitSumError::EmptySummands);
    }
    let digit_sums: u64 = xs.iter().map(s2).sum();
    let total: BigUint = xs.iter().sum();
    Ok(digit_sums - s2(&total))
}

/// Exponent of 2 in the multinomial coefficient `(sum parts)! / prod(parts_i!)`.
///
/// By Kummer's theorem this equals the number of carries when the parts are
/// added together in binary, which is how it is computed here.
pub fn v2_multinomial(parts: &[BigUint]) -> Result<u64, DigitSumError> {
    carries_in_sum(parts)
}

/// Exponent of 2 in the prime factorisation of `x`. Errors on `x = 0`.
pub fn v2(x: &BigUint) -> Result<u64, DigitSumError> {
    x.trailing_zeros().ok_or(DigitSumError::ValuationOfZero)
}

/// Binary digits of `x`, least significant first, padded with zeroes to
/// exactly `width` entries. Position `i` of the result holds the digit `a_i`
/// with `x = sum 2^i a_i`.
pub fn binary_digits(x: &BigUint, width: usize) -> Result<Vec<u8>, DigitSumError> {
    let needed = if x.is_zero() { 0 } else { x.bits() as usize };
    if width < needed {
        return Err(DigitSumError::WidthTooSmall { width, needed });
    }
    Ok((0..width).map(|i| u8::from(x.bit(i as u64))).collect())
}
