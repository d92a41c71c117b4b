//! Exact integer and rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Arbitrary-precision rational used for densities and closed-form values.
pub type ExactRatio = BigRational;

pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, i| acc * i)
}

/// `n! / (m_1! ... m_c!)` for multiplicities summing to `n`.
pub fn multinomial(parts: &[u64]) -> BigCount {
    let n: u64 = parts.iter().sum();
    let mut acc = factorial(n);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRatio {
    BigRational::new(num.into(), den.into())
}

pub fn ratio_int(v: impl Into<BigInt>) -> ExactRatio {
    BigRational::from_integer(v.into())
}

pub fn count_to_ratio(c: &BigCount) -> ExactRatio {
    BigRational::from_integer(BigInt::from(c.clone()))
}

/// Integer power of a rational; negative exponents invert.
pub fn rpow(base: &ExactRatio, exp: i64) -> ExactRatio {
    let mut acc = ExactRatio::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Converts an integral rational to a count; `None` if it is negative or has a denominator.
pub fn ratio_to_count(r: &ExactRatio) -> Option<BigCount> {
    if !r.is_integer() || r.is_negative() {
        return None;
    }
    r.to_integer().to_biguint()
}

/// Fixed-point rendering with `digits` digits after the point, rounded half away from zero.
pub fn format_decimal(r: &ExactRatio, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut q = q;
    if rem * BigInt::from(2) >= *scaled.denom() {
        q += 1;
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits as usize
    )
}

pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
