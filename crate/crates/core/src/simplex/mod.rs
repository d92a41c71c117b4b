//! The function
//!
//! ```text
//! F_{d,k}(x) = sum_{i != j} x_i x_j^{k-1} / (1 - sum_i x_i^k)
//! ```
//!
//! on the probability simplex, evaluated exactly over the rationals (for bound
//! checks) or in `f64` (for the optimizer).
//!
//! On the simplex `F_{d,k}` lies between `(d-1)/(d^{k-1}-1)`, attained at the
//! uniform point, and `1/k`, approached along the edge path
//! `(0, .., 0, eps, 1 - eps)` as `eps -> 0`.

mod muirhead;
mod optimize;

pub use muirhead::{muirhead_check, muirhead_sums, symmetric_sum, MajorizationPair};
pub use optimize::{minimize_f, minimize_f_with, MinimizeOptions, MinimizeResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{multinomial, ratio, ratio_int, ExactRatio};
use crate::error::{Error, Result};

/// Tolerance on the coordinate sum of a floating-point simplex point.
pub const REAL_SUM_TOLERANCE: f64 = 1e-14;

/// A point of the closed probability simplex with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPoint {
    coords: Vec<BigRational>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<SimplexPoint> {
        if coords.is_empty() {
            return Err(Error::domain("a simplex point needs at least one coordinate"));
        }
        if coords.iter().any(|x| x.is_negative()) {
            return Err(Error::domain("simplex coordinates must be nonnegative"));
        }
        let sum: BigRational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::domain(format!("simplex coordinates sum to {sum}, not 1")));
        }
        Ok(SimplexPoint { coords })
    }

    /// Normalised positive integer weights.
    pub fn from_weights(weights: &[u64]) -> Result<SimplexPoint> {
        let total: u64 = weights.iter().sum();
        if total == 0 {
            return Err(Error::domain("weights must not all be zero"));
        }
        SimplexPoint::new(weights.iter().map(|&w| ratio(w, total)).collect())
    }

    pub fn uniform(d: usize) -> SimplexPoint {
        SimplexPoint {
            coords: vec![ratio(1, d as u64); d],
        }
    }

    /// `(0, .., 0, eps, 1 - eps)` with `d - 2` zeros.
    pub fn edge_path(d: usize, eps: &BigRational) -> Result<SimplexPoint> {
        if d < 2 {
            return Err(Error::domain("edge path needs d >= 2"));
        }
        let mut coords = vec![BigRational::zero(); d - 2];
        coords.push(eps.clone());
        coords.push(BigRational::one() - eps);
        SimplexPoint::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|x| x.is_positive())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(crate::arith::ratio_to_f64).collect()
    }

    /// Common denominator `L` and integer numerators `w_i = L x_i`.
    fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let weights = self
            .coords
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        (lcm, weights)
    }
}

/// A point of the simplex in floating point; coordinates sum to 1 within [`REAL_SUM_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct RealSimplexPoint {
    coords: Vec<f64>,
}

impl RealSimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<RealSimplexPoint> {
        if coords.is_empty() || coords.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::domain("simplex coordinates must be finite and nonnegative"));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > REAL_SUM_TOLERANCE {
            return Err(Error::domain(format!("simplex coordinates sum to {sum}, not 1")));
        }
        Ok(RealSimplexPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|&x| x > 0.0)
    }
}

fn check_dk(d: usize, k: usize, dim: usize) -> Result<()> {
    if d < 2 || k < 2 {
        return Err(Error::domain(format!("need d >= 2 and k >= 2, got d = {d}, k = {k}")));
    }
    if dim != d {
        return Err(Error::domain(format!("point has {dim} coordinates, expected d = {d}")));
    }
    Ok(())
}

/// Exact `F_{d,k}` at a rational simplex point.
pub fn eval_f(d: usize, k: usize, p: &SimplexPoint) -> Result<ExactRatio> {
    check_dk(d, k, p.dim())?;
    let (lcm, w) = p.integer_form();
    let e = k as u32;
    let powers: Vec<BigInt> = w.iter().map(|x| x.pow(e - 1)).collect();
    let total: BigInt = w.iter().sum();
    let sum_top: BigInt = powers.iter().sum();
    // sum_{i != j} w_i w_j^{k-1} = (sum_i w_i) (sum_j w_j^{k-1}) - sum_i w_i^k
    let sum_k: BigInt = w.iter().zip(&powers).map(|(a, b)| a * b).sum();
    let numerator = &total * &sum_top - &sum_k;
    let denominator = lcm.pow(e) - sum_k;
    if denominator.is_zero() {
        return Err(Error::Singular(format!(
            "F_{{{d},{k}}} has a vanishing denominator (a coordinate equals 1)"
        )));
    }
    Ok(BigRational::new(numerator, denominator))
}

/// `F_{d,k}` in floating point; `+inf` where the denominator vanishes.
pub fn eval_f_real(k: usize, x: &[f64]) -> f64 {
    let e = k as i32;
    let total: f64 = x.iter().sum();
    let top: f64 = x.iter().map(|v| v.powi(e - 1)).sum();
    let sum_k: f64 = x.iter().map(|v| v.powi(e)).sum();
    let denominator = 1.0 - sum_k;
    if denominator <= 0.0 {
        return f64::INFINITY;
    }
    (total * top - sum_k) / denominator
}

/// `(d-1) / (d^{k-1} - 1)`, the value at the uniform point.
pub fn uniform_value(d: usize, k: usize) -> ExactRatio {
    ratio_int(d as u64 - 1) / (ratio_int(BigInt::from(d).pow(k as u32 - 1)) - ExactRatio::one())
}

/// Exact values of `F_{d,k}` along `(0, .., 0, eps, 1 - eps)`.
pub fn sup_boundary_scan(d: usize, k: usize, eps_schedule: &[BigRational]) -> Result<Vec<ExactRatio>> {
    let half = ratio(1, 2);
    eps_schedule
        .iter()
        .map(|eps| {
            if !eps.is_positive() || eps > &half {
                return Err(Error::domain(format!("eps = {eps} must lie in (0, 1/2]")));
            }
            eval_f(d, k, &SimplexPoint::edge_path(d, eps)?)
        })
        .collect()
}

/// `eps = 2^{-t}` for `t = 1..=steps`.
pub fn dyadic_schedule(steps: u32) -> Vec<BigRational> {
    (1..=steps)
        .map(|t| BigRational::new(BigInt::one(), BigInt::one() << t))
        .collect()
}

/// All ordered `d`-tuples of nonnegative integers summing to `k` with no entry equal to `k`.
pub fn exponent_tuples(d: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v);
            rec(d, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(d, k, &mut Vec::with_capacity(d), &mut out);
    out.retain(|t| t.iter().all(|&v| v != k));
    out
}

fn is_edge_exponent(t: &[u32], k: u32) -> bool {
    let mut sorted = t.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.first() == Some(&(k - 1)) && sorted.get(1) == Some(&1) && sorted[2..].iter().all(|&v| v == 0)
}

/// [`exponent_tuples`] without the permutations of `(k-1, 1, 0, .., 0)`.
pub fn exponent_tuples_without_edge(d: usize, k: u32) -> Vec<Vec<u32>> {
    exponent_tuples(d, k)
        .into_iter()
        .filter(|t| !is_edge_exponent(t, k))
        .collect()
}

/// Nonincreasing representatives of [`exponent_tuples`].
pub fn sorted_exponent_tuples(d: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = exponent_tuples(d, k)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] >= w[1]))
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Both sides of
/// `1 - sum x_i^k = sum_{V*} multinomial(k; i) prod x_j^{i_j} + k sum_{i<j} (x_i x_j^{k-1} + x_i^{k-1} x_j)`.
pub fn multinomial_decomposition(k: u32, p: &SimplexPoint) -> (ExactRatio, ExactRatio) {
    let x = p.coords();
    let d = x.len();
    let pow = |v: &BigRational, e: u32| -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..e {
            acc *= v;
        }
        acc
    };
    let lhs = BigRational::one() - x.iter().map(|v| pow(v, k)).sum::<BigRational>();
    let mut rhs = BigRational::zero();
    for t in exponent_tuples_without_edge(d, k) {
        let parts: Vec<u64> = t.iter().map(|&v| v as u64).collect();
        let coeff = BigRational::from_integer(BigInt::from(multinomial(&parts)));
        let mono: BigRational = x.iter().zip(&t).map(|(v, &e)| pow(v, e)).product();
        rhs += coeff * mono;
    }
    let mut pairs = BigRational::zero();
    for i in 0..d {
        for j in i + 1..d {
            pairs += &x[i] * pow(&x[j], k - 1) + pow(&x[i], k - 1) * &x[j];
        }
    }
    rhs += ratio_int(k as u64) * pairs;
    (lhs, rhs)
}

/// Random interior point with integer weights in `1..=1000`.
pub fn random_interior_point<R: Rng>(d: usize, rng: &mut R) -> SimplexPoint {
    let weights: Vec<u64> = (0..d).map(|_| rng.random_range(1..=1000)).collect();
    SimplexPoint::from_weights(&weights).expect("positive weights")
}

/// `count` seeded random interior points of the `d`-simplex.
pub fn random_interior_points(d: usize, count: usize, seed: u64) -> Vec<SimplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_interior_point(d, &mut rng)).collect()
}

/// Outcome of [`bound_sample`].
#[derive(Debug, Clone)]
pub struct BoundSample {
    pub d: usize,
    pub k: usize,
    pub points: Vec<(SimplexPoint, ExactRatio)>,
    /// Points with `F > 1/k`.
    pub upper_violations: usize,
    /// Points with `F < (d-1)/(d^{k-1}-1)`.
    pub lower_violations: usize,
}

impl BoundSample {
    pub fn max_value(&self) -> Option<&ExactRatio> {
        self.points.iter().map(|(_, v)| v).max()
    }

    pub fn min_value(&self) -> Option<&ExactRatio> {
        self.points.iter().map(|(_, v)| v).min()
    }
}

/// Evaluates `F_{d,k}` exactly at `samples` seeded random interior points and
/// counts violations of both bounds.
pub fn bound_sample(d: usize, k: usize, samples: usize, seed: u64) -> Result<BoundSample> {
    if d < 2 || k < 3 {
        return Err(Error::domain(format!("bound sampling needs d >= 2 and k >= 3, got d = {d}, k = {k}")));
    }
    let points = random_interior_points(d, samples, seed);
    let values: Vec<ExactRatio> = points
        .par_iter()
        .map(|p| eval_f(d, k, p))
        .collect::<Result<_>>()?;
    let upper = ratio(1, k as u64);
    let lower = uniform_value(d, k);
    let upper_violations = values.iter().filter(|v| **v > upper).count();
    let lower_violations = values.iter().filter(|v| **v < lower).count();
    Ok(BoundSample {
        d,
        k,
        points: points.into_iter().zip(values).collect(),
        upper_violations,
        lower_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_point_values() {
        for d in 2..6 {
            for k in 3..8 {
                assert_eq!(eval_f(d, k, &SimplexPoint::uniform(d)).unwrap(), uniform_value(d, k));
            }
        }
        assert_eq!(eval_f(2, 4, &SimplexPoint::uniform(2)).unwrap(), ratio(1, 7));
        assert_eq!(uniform_value(3, 3), ratio(1, 4));
        assert_eq!(uniform_value(4, 5), ratio(1, 85));
    }

    #[test]
    fn binary_cubic_is_constant() {
        for w in 1..40u64 {
            let p = SimplexPoint::from_weights(&[w, 41 - w]).unwrap();
            assert_eq!(eval_f(2, 3, &p).unwrap(), ratio(1, 3));
        }
    }

    #[test]
    fn singular_and_invalid_points() {
        let vertex = SimplexPoint::from_weights(&[0, 1, 0]).unwrap();
        assert!(!vertex.is_interior());
        assert!(matches!(eval_f(3, 4, &vertex), Err(Error::Singular(_))));
        assert!(SimplexPoint::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(SimplexPoint::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert!(eval_f(3, 4, &SimplexPoint::uniform(2)).is_err());
        assert!(RealSimplexPoint::new(vec![0.5, 0.5 + 1e-12]).is_err());
        assert!(RealSimplexPoint::new(vec![0.25; 4]).unwrap().is_interior());
    }

    #[test]
    fn real_mode_matches_exact() {
        let p = SimplexPoint::from_weights(&[3, 5, 11, 2]).unwrap();
        for k in 3..7 {
            let exact = crate::arith::ratio_to_f64(&eval_f(4, k, &p).unwrap());
            assert!((eval_f_real(k, &p.to_f64()) - exact).abs() < 1e-15);
        }
        assert_eq!(eval_f_real(3, &[1.0, 0.0]), f64::INFINITY);
    }

    #[test]
    fn edge_scan_examples() {
        let vals = sup_boundary_scan(2, 3, &dyadic_schedule(10)).unwrap();
        assert!(vals.iter().all(|v| *v == ratio(1, 3)));

        let vals = sup_boundary_scan(3, 4, &dyadic_schedule(20)).unwrap();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
        let gap = ratio(1, 4) - vals.last().unwrap();
        assert!(gap.is_positive() && gap < ratio(1, 10_000));

        for d in 2..5 {
            for k in 3..7 {
                let v = sup_boundary_scan(d, k, &[ratio(1, 2)]).unwrap();
                assert!(v[0] <= ratio(1, k as u64));
            }
        }
        assert!(sup_boundary_scan(3, 4, &[ratio(0, 1)]).is_err());
        assert!(sup_boundary_scan(3, 4, &[ratio(3, 4)]).is_err());
    }

    #[test]
    fn exponent_sets() {
        // d^k - d ordered tuples weighted by multinomials sum to d^k - d
        for d in 2..5 {
            for k in 3..7u32 {
                let total: num_bigint::BigUint = exponent_tuples(d, k)
                    .iter()
                    .map(|t| multinomial(&t.iter().map(|&v| v as u64).collect::<Vec<_>>()))
                    .sum();
                assert_eq!(total, num_bigint::BigUint::from((d as u64).pow(k) - d as u64));
                let without = exponent_tuples_without_edge(d, k).len();
                assert_eq!(exponent_tuples(d, k).len() - without, d * (d - 1));
            }
        }
        assert_eq!(sorted_exponent_tuples(3, 3), vec![vec![2, 1, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn decomposition_identity_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..5 {
            for k in 3..7u32 {
                for _ in 0..20 {
                    let p = random_interior_point(d, &mut rng);
                    let (lhs, rhs) = multinomial_decomposition(k, &p);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn symmetric_under_permutation() {
        let p = SimplexPoint::from_weights(&[1, 4, 9]).unwrap();
        let q = SimplexPoint::from_weights(&[9, 1, 4]).unwrap();
        for k in 3..7 {
            assert_eq!(eval_f(3, k, &p).unwrap(), eval_f(3, k, &q).unwrap());
        }
    }

    #[test]
    fn small_bound_sample() {
        let s = bound_sample(3, 4, 200, 1).unwrap();
        assert_eq!(s.points.len(), 200);
        assert_eq!(s.upper_violations + s.lower_violations, 0);
        let again = bound_sample(3, 4, 200, 1).unwrap();
        assert_eq!(s.points, again.points);
    }
}
