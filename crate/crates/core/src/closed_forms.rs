//! Exact evaluation of the closed formulas for caterpillar copies in complete
//! trees, their limiting densities, and the minimum-copy lower bound.
//!
//! Everything here is computed in exact rationals; no floating point.

use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, count_to_ratio, ratio, ratio_int, ratio_to_count, rpow, BigCount, ExactRatio};
use crate::error::{Error, Result};

/// An exact limiting value together with the parameters it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitValue {
    pub d: u64,
    pub k: u64,
    pub r: u64,
    pub value: ExactRatio,
}

impl LimitValue {
    /// `lim_h gamma(F^r_k, CD^d_h)`; for `r = 2` this is also the minimum asymptotic density.
    pub fn compute(d: u64, k: u64, r: u64) -> Result<LimitValue> {
        let value = limit_density_complete(r, k, d)?;
        Ok(LimitValue { d, k, r, value })
    }
}

fn check_arity(r: u64, d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("d = {d} must be at least 2")));
    }
    if r < 2 || r > d {
        return Err(Error::domain(format!("need 2 <= r <= d, got r = {r}, d = {d}")));
    }
    Ok(())
}

/// Number of r-ary caterpillar levels, `(k - 1) / (r - 1)`, checking the congruence.
fn caterpillar_levels(r: u64, k: u64) -> Result<u64> {
    if k < r || !(k - 1).is_multiple_of(r - 1) {
        return Err(Error::domain(format!(
            "F^{r}_{k} is undefined: need k >= r and k = 1 (mod r-1)"
        )));
    }
    Ok((k - 1) / (r - 1))
}

fn pow_int(base: u64, exp: u64) -> ExactRatio {
    rpow(&ratio_int(base), exp as i64)
}

fn to_count(value: &ExactRatio, what: &str) -> Result<BigCount> {
    ratio_to_count(value).ok_or_else(|| {
        Error::Singular(format!("{what} evaluated to the non-integer {value}"))
    })
}

/// Copies of the r-leaf star in `CD^d_h`: `C(d,r) / (d^r - d) * (d^{rh} - d^h)`.
pub fn star_copies(r: u64, d: u64, h: u64) -> Result<BigCount> {
    check_arity(r, d)?;
    if h < 1 {
        return Err(Error::domain("star count needs h >= 1"));
    }
    let value = count_to_ratio(&binomial(d, r)) / (pow_int(d, r) - ratio_int(d))
        * (pow_int(d, r * h) - pow_int(d, h));
    to_count(&value, "star count")
}

/// Copies of the r-ary caterpillar `F^r_k` in `CD^d_h`, from the product formula.
pub fn caterpillar_copies_complete(r: u64, k: u64, d: u64, h: u64) -> Result<BigCount> {
    check_arity(r, d)?;
    let levels = caterpillar_levels(r, k)?;
    if h < 1 {
        return Err(Error::domain("complete-tree caterpillar count needs h >= 1"));
    }
    let step = r - 1;
    let mut value = rpow(&count_to_ratio(&binomial(d, r)), levels as i64)
        * rpow(&ratio(r, d), ((k - r) / step) as i64)
        * pow_int(d, h - 1);
    for i in 1..=levels {
        let num = pow_int(d, h * step) - pow_int(d, (i - 1) * step);
        if num.is_zero() {
            return Ok(BigCount::zero());
        }
        value *= num / (pow_int(d, i * step) - ExactRatio::one());
    }
    to_count(&value, "caterpillar count")
}

/// `lim_{h -> inf} gamma(F^r_k, CD^d_h)`.
pub fn limit_density_complete(r: u64, k: u64, d: u64) -> Result<ExactRatio> {
    check_arity(r, d)?;
    let levels = caterpillar_levels(r, k)?;
    let step = r - 1;
    let mut value = count_to_ratio(&factorial(k)) / ratio_int(d)
        * rpow(&count_to_ratio(&binomial(d, r)), levels as i64)
        * rpow(&ratio(r, d), ((k - r) / step) as i64);
    for j in 1..=levels {
        value /= pow_int(d, step * j) - ExactRatio::one();
    }
    Ok(value)
}

fn check_dk(d: u64, k: u64) -> Result<()> {
    if d < 2 || k < 2 {
        return Err(Error::domain(format!("need d >= 2 and k >= 2, got d = {d}, k = {k}")));
    }
    Ok(())
}

/// `b_k = (1/2) (d-1)^{k-1} prod_{j=1}^{k-1} (d^j - 1)^{-1}`.
pub fn bk(d: u64, k: u64) -> Result<ExactRatio> {
    check_dk(d, k)?;
    let mut value = ratio(1, 2) * pow_int(d - 1, k - 1);
    for j in 1..k {
        value /= pow_int(d, j) - ExactRatio::one();
    }
    Ok(value)
}

/// Minimum asymptotic density of `F^2_k` in d-ary trees: `k! * b_k`.
pub fn liminf_density(d: u64, k: u64) -> Result<ExactRatio> {
    Ok(count_to_ratio(&factorial(k)) * bk(d, k)?)
}

/// `b_k n^k - n^{k-1} / (k-1)!`; negative for small `n`.
pub fn bk_lower_bound(d: u64, k: u64, n: u64) -> Result<ExactRatio> {
    let b = bk(d, k)?;
    Ok(b * pow_int(n, k) - pow_int(n, k - 1) / count_to_ratio(&factorial(k - 1)))
}

/// Leading term `b_k n^k` of the minimum number of copies of `F^2_k` in n-leaf d-ary trees.
pub fn asymptotic_min_copies(d: u64, k: u64, n: u64) -> Result<ExactRatio> {
    Ok(bk(d, k)? * pow_int(n, k))
}
