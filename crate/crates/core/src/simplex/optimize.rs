//! Multi-start Nelder-Mead for `F_{d,k}` over the open simplex.
//!
//! The search runs in `y = (x_1, .., x_{d-1})` with `x_d = 1 - sum y`. Each start
//! passes through a short schedule of log-barrier weights ending at zero; the
//! barrier `-sum ln x_i` is itself minimal at the uniform point, so it pulls
//! iterates off the boundary without moving the minimiser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval_f_real;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct MinimizeOptions {
    pub seed: u64,
    pub starts: usize,
    /// Total objective evaluations shared by all starts.
    pub max_evals: usize,
    pub barrier_schedule: Vec<f64>,
    /// Stop a stage once the simplex diameter drops below this.
    pub x_tol: f64,
    /// Step for the central differences of the stationarity residual.
    pub fd_step: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            seed: 0,
            starts: 8,
            max_evals: 100_000,
            barrier_schedule: vec![1e-3, 1e-6, 0.0],
            x_tol: 1e-11,
            fd_step: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult {
    pub point: Vec<f64>,
    pub value: f64,
    /// Largest central-difference derivative of `F` along `e_i - e_d`.
    pub residual: f64,
    pub evaluations: usize,
    /// False when some start ran out of evaluations before meeting `x_tol`.
    pub converged: bool,
}

fn lift(y: &[f64]) -> Vec<f64> {
    let mut x = y.to_vec();
    x.push(1.0 - y.iter().sum::<f64>());
    x
}

fn objective(k: usize, mu: f64, y: &[f64]) -> f64 {
    let x = lift(y);
    if x.iter().any(|&v| v <= 0.0) {
        return f64::INFINITY;
    }
    let f = eval_f_real(k, &x);
    if mu == 0.0 {
        f
    } else {
        f - mu * x.iter().map(|v| v.ln()).sum::<f64>()
    }
}

/// Max over `i < d` of `|dF/dt|` along `x + t (e_i - e_d)`, by central differences.
pub fn stationarity_residual(k: usize, x: &[f64], h: f64) -> f64 {
    let d = x.len();
    let mut worst: f64 = 0.0;
    for i in 0..d.saturating_sub(1) {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[i] += h;
        plus[d - 1] -= h;
        minus[i] -= h;
        minus[d - 1] += h;
        let g = (eval_f_real(k, &plus) - eval_f_real(k, &minus)) / (2.0 * h);
        worst = worst.max(g.abs());
    }
    worst
}

struct Stage {
    best: Vec<f64>,
    value: f64,
    evals: usize,
    converged: bool,
}

fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, start: &[f64], scale: f64, x_tol: f64, budget: usize) -> Stage {
    let n = start.len();
    let mut pts: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += scale;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut evals = n + 1;
    let mut converged = false;

    while evals < budget {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let diameter = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < x_tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| pts[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < vals[0] {
            let expanded = along(2.0);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                pts[n] = expanded;
                vals[n] = fe;
            } else {
                pts[n] = reflected;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = reflected;
            vals[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[n] {
            let c = along(0.5);
            let v = f(&c);
            (c, v)
        } else {
            let c = along(-0.5);
            let v = f(&c);
            (c, v)
        };
        evals += 1;
        if fc < vals[n].min(fr) {
            pts[n] = contracted;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let shrunk: Vec<f64> = pts[i].iter().zip(&pts[0]).map(|(p, b)| b + 0.5 * (p - b)).collect();
            vals[i] = f(&shrunk);
            pts[i] = shrunk;
        }
        evals += n;
    }

    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    Stage {
        best: pts[best].clone(),
        value: vals[best],
        evals,
        converged,
    }
}

fn random_start(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w[..d - 1].iter().map(|v| v / total).collect()
}

/// Minimises `F_{d,k}` with the default options and the given seed.
pub fn minimize_f(d: usize, k: usize, seed: u64) -> Result<MinimizeResult> {
    minimize_f_with(
        d,
        k,
        &MinimizeOptions {
            seed,
            ..MinimizeOptions::default()
        },
    )
}

pub fn minimize_f_with(d: usize, k: usize, opts: &MinimizeOptions) -> Result<MinimizeResult> {
    if d < 2 || k < 3 {
        return Err(Error::domain(format!("minimisation needs d >= 2 and k >= 3, got d = {d}, k = {k}")));
    }
    if opts.starts == 0 || opts.barrier_schedule.is_empty() {
        return Err(Error::domain("need at least one start and one barrier stage"));
    }
    let per_stage = opts.max_evals / (opts.starts * opts.barrier_schedule.len());

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<Vec<f64>> = (0..opts.starts).map(|_| random_start(d, &mut rng)).collect();

    let runs: Vec<(Vec<f64>, f64, usize, bool)> = starts
        .par_iter()
        .map(|start| {
            let mut y = start.clone();
            let mut evals = 0;
            let mut converged = true;
            let mut scale = 0.1 / d as f64;
            for &mu in &opts.barrier_schedule {
                let stage = nelder_mead(|p| objective(k, mu, p), &y, scale, opts.x_tol, per_stage);
                y = stage.best;
                evals += stage.evals;
                converged = stage.converged;
                debug_assert!(stage.value.is_finite());
                scale = 1e-3 / d as f64;
            }
            let value = objective(k, 0.0, &y);
            (y, value, evals, converged)
        })
        .collect();

    let evaluations = runs.iter().map(|r| r.2).sum();
    let converged = runs.iter().all(|r| r.3);
    // first start wins ties, so the result does not depend on scheduling
    let best = runs
        .into_iter()
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .expect("at least one start");
    let point = lift(&best.0);
    Ok(MinimizeResult {
        residual: stationarity_residual(k, &point, opts.fd_step),
        point,
        value: best.1,
        evaluations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio_to_f64;
    use crate::simplex::uniform_value;

    fn assert_uniform(d: usize, k: usize) {
        let r = minimize_f(d, k, 42).unwrap();
        let target = ratio_to_f64(&uniform_value(d, k));
        assert!((r.value - target).abs() < 1e-9, "d={d} k={k}: {} vs {target}", r.value);
        for x in &r.point {
            assert!((x - 1.0 / d as f64).abs() < 1e-6, "d={d} k={k}: {:?}", r.point);
        }
        assert!(r.converged);
        assert!(r.evaluations <= 100_000);
    }

    #[test]
    fn lands_at_uniform_point() {
        for (d, k) in [(2, 4), (3, 3), (3, 4), (4, 5)] {
            assert_uniform(d, k);
        }
    }

    #[test]
    fn flat_binary_cubic() {
        let r = minimize_f(2, 3, 1).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn uniform_point_is_stationary() {
        for d in 2..6 {
            for k in 3..7 {
                let x = vec![1.0 / d as f64; d];
                assert!(stationarity_residual(k, &x, 1e-5) <= 1e-8);
            }
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        assert_eq!(minimize_f(3, 4, 9).unwrap(), minimize_f(3, 4, 9).unwrap());
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let opts = MinimizeOptions {
            max_evals: 48,
            ..MinimizeOptions::default()
        };
        let r = minimize_f_with(4, 5, &opts).unwrap();
        assert!(!r.converged);
        assert!(r.value.is_finite());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(minimize_f(1, 4, 0).is_err());
        assert!(minimize_f(3, 2, 0).is_err());
    }
}
