use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{binomial, count_to_ratio, BigCount, ExactRatio};
use crate::closed_forms::liminf_density;
use crate::counting::CaterpillarCounter;
use crate::error::{Error, Result};
use crate::extremal::enumerate::TreeCatalog;
use crate::extremal::pareto::ParetoSearch;
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Pareto,
    Conjecture,
    Monotone,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Pareto => "pareto",
            SearchMode::Conjecture => "conjecture",
            SearchMode::Monotone => "monotone",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub d: usize,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: SearchMode,
}

/// Minimum of `c(F^2_k, T)` over one class of `n`-leaf trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum {
    pub count: BigCount,
    pub density: ExactRatio,
    /// Every minimiser found (exhaustive), or the frontier witness (Pareto).
    pub argmin: Vec<Tree>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub n: usize,
    pub min: Minimum,
    /// Minimum over strictly d-ary trees, when `n = 1 (mod d-1)` and it was computed.
    pub strict_min: Option<Minimum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub n: usize,
    pub check: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub params: SearchParams,
    pub rows: Vec<SearchRow>,
    pub verdicts: Vec<Verdict>,
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.holds)
    }

    pub fn row(&self, n: usize) -> Option<&SearchRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

fn density_of(count: &BigCount, n: usize, k: usize) -> ExactRatio {
    count_to_ratio(count) / count_to_ratio(&binomial(n as u64, k as u64))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::domain(format!("caterpillar order k = {k} must be at least 2")));
    }
    if n < k {
        return Err(Error::domain(format!("need n >= k, got n = {n} < k = {k}")));
    }
    Ok(())
}

fn exhaustive_minimum(
    catalog: &mut TreeCatalog,
    counter: &mut CaterpillarCounter,
    n: usize,
    k: usize,
) -> Result<Minimum> {
    let mut best: Option<BigUint> = None;
    let mut argmin = Vec::new();
    for tree in catalog.trees(n)? {
        let c = counter.top(tree);
        match &best {
            Some(b) if &c > b => {}
            Some(b) if &c == b => argmin.push(tree.clone()),
            _ => {
                best = Some(c);
                argmin.clear();
                argmin.push(tree.clone());
            }
        }
    }
    let count = best.expect("at least one tree per leaf count");
    Ok(Minimum {
        density: density_of(&count, n, k),
        count,
        argmin,
    })
}

/// Exhaustive minima of `gamma(F^2_k, T)` over d-ary trees for `n_min <= n <= n_max`.
///
/// The strictly d-ary minimum is reported alongside whenever `n = 1 (mod d-1)`.
pub fn exhaustive_minima(d: usize, k: usize, n_min: usize, n_max: usize, budget: u64) -> Result<SearchReport> {
    check_nk(n_min, k)?;
    let started = Instant::now();
    let mut catalog = TreeCatalog::with_budget(d, false, budget)?;
    let mut strict_catalog = TreeCatalog::with_budget(d, true, budget)?;
    let mut counter = CaterpillarCounter::new(k)?;
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let min = exhaustive_minimum(&mut catalog, &mut counter, n, k)?;
        let strict_min = if d == 2 {
            // every binary tree is strictly binary
            Some(min.clone())
        } else if (n - 1) % (d - 1) == 0 {
            Some(exhaustive_minimum(&mut strict_catalog, &mut counter, n, k)?)
        } else {
            None
        };
        rows.push(SearchRow { n, min, strict_min });
    }
    Ok(SearchReport {
        params: SearchParams {
            d,
            k,
            n_min,
            n_max,
            mode: SearchMode::Exhaustive,
        },
        rows,
        verdicts: Vec::new(),
        wall_time: started.elapsed(),
    })
}

/// Exact minimum of `gamma(F^2_k, T)` over n-leaf d-ary trees, with all minimisers.
pub fn min_density_exhaustive(n: usize, d: usize, k: usize) -> Result<SearchReport> {
    exhaustive_minima(d, k, n, n, crate::extremal::enumerate::DEFAULT_TREE_BUDGET)
}

/// Options for [`verify_even_conjecture_with`].
#[derive(Debug, Clone)]
pub struct ConjectureOptions {
    /// Cross-check Pareto minima against exhaustive enumeration up to this leaf count.
    pub validate_upto: usize,
    pub tree_budget: u64,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions {
            validate_upto: 16,
            tree_budget: crate::extremal::enumerate::DEFAULT_TREE_BUDGET,
        }
    }
}

/// Checks, for `k <= n <= n_max`, that the even binary tree attains the minimum
/// number of copies of `F^2_k` among binary trees.
pub fn verify_even_conjecture(k: usize, n_max: usize) -> Result<SearchReport> {
    let mut search = ParetoSearch::new(k)?;
    verify_even_conjecture_with(&mut search, n_max, &ConjectureOptions::default())
}

/// As [`verify_even_conjecture`], reusing (and extending) an existing binary frontier.
pub fn verify_even_conjecture_with(
    search: &mut ParetoSearch,
    n_max: usize,
    opts: &ConjectureOptions,
) -> Result<SearchReport> {
    if search.arity() != 2 {
        return Err(Error::domain("the even-tree check concerns binary trees (d = 2)"));
    }
    let k = search.order();
    check_nk(n_max, k)?;
    let started = Instant::now();
    search.extend_to(n_max)?;

    let mut verdicts = Vec::new();
    let validate_to = opts.validate_upto.min(n_max);
    if validate_to >= k {
        let exhaustive = exhaustive_minima(2, k, k, validate_to, opts.tree_budget)?;
        for row in &exhaustive.rows {
            let dp = search.min_count(row.n);
            let holds = row.min.count.to_u128() == Some(dp);
            verdicts.push(Verdict {
                n: row.n,
                check: "pareto_equals_exhaustive",
                holds,
                detail: format!("pareto {dp} exhaustive {}", row.min.count),
            });
        }
    }

    let mut counter = CaterpillarCounter::new(k)?;
    let mut rows = Vec::new();
    for n in k..=n_max {
        let best = search.best(n);
        let count = BigCount::from(best.top());
        let even = counter.top(&Tree::even_binary(n)?);
        verdicts.push(Verdict {
            n,
            check: "even_tree_is_minimal",
            holds: even == count,
            detail: format!("even {even} minimum {count}"),
        });
        rows.push(SearchRow {
            n,
            min: Minimum {
                density: density_of(&count, n, k),
                count,
                argmin: best.witness.iter().cloned().collect(),
            },
            strict_min: None,
        });
    }
    Ok(SearchReport {
        params: SearchParams {
            d: 2,
            k,
            n_min: k,
            n_max,
            mode: SearchMode::Conjecture,
        },
        rows,
        verdicts,
        wall_time: started.elapsed(),
    })
}

/// Checks that the exhaustive minimum density is nondecreasing in `n` and never
/// exceeds the minimum asymptotic density, for `k <= n <= n_max`.
pub fn verify_monotone_min(d: usize, k: usize, n_max: usize) -> Result<SearchReport> {
    verify_monotone_min_with_budget(d, k, n_max, crate::extremal::enumerate::DEFAULT_TREE_BUDGET)
}

pub fn verify_monotone_min_with_budget(d: usize, k: usize, n_max: usize, budget: u64) -> Result<SearchReport> {
    let started = Instant::now();
    let limit = liminf_density(d as u64, k as u64)?;
    let mut report = exhaustive_minima(d, k, k, n_max, budget)?;
    let mut verdicts = Vec::new();
    for (i, row) in report.rows.iter().enumerate() {
        if i > 0 {
            let prev = &report.rows[i - 1];
            verdicts.push(Verdict {
                n: row.n,
                check: "nondecreasing",
                holds: prev.min.density <= row.min.density,
                detail: format!("{} -> {}", prev.min.density, row.min.density),
            });
        }
        verdicts.push(Verdict {
            n: row.n,
            check: "below_limit",
            holds: row.min.density <= limit,
            detail: format!("{} <= {}", row.min.density, limit),
        });
    }
    report.params.mode = SearchMode::Monotone;
    report.verdicts = verdicts;
    report.wall_time = started.elapsed();
    Ok(report)
}
