use leafcount::arith::{binomial, count_to_ratio, ratio};
use leafcount::closed_forms::LimitValue;
use leafcount::counting::{count_copies_brute_with_cap, BRUTE_FORCE_SUBSET_CAP};
use leafcount::extremal::{
    count_trees, exhaustive_minima, verify_even_conjecture_with, verify_monotone_min_with_budget,
    ConjectureOptions, FrontierCache, Minimum, ParetoSearch, TreeCatalog,
};
use leafcount::simplex::{
    bound_sample, dyadic_schedule, minimize_f, muirhead_sums, random_interior_points, sorted_exponent_tuples,
    sup_boundary_scan, uniform_value, MajorizationPair, SimplexPoint,
};
use leafcount::{BigCount, CaterpillarCounter, CountingEngine, ExactRatio, Tree};
use num_bigint::BigUint;

use crate::report::{decimal, Report};
use crate::{CacheAction, CliError, CliResult, Command, RunConfig, SearchMethod, SimplexMode};

/// Largest dimension accepted by the Muirhead mode, which sums over all `d!` permutations.
const MUIRHEAD_MAX_D: usize = 8;
/// Largest path length accepted by the sup mode.
const MAX_STEPS: u32 = 256;

/// A fully validated run, ready to execute.
#[derive(Debug)]
pub enum Job {
    Count {
        pattern: Tree,
        pattern_label: String,
        tree: Tree,
        tree_label: String,
        brute_cap: Option<Option<u64>>,
        density_only: bool,
    },
    Enumerate {
        n: usize,
        d: usize,
        strict: bool,
        k: Option<usize>,
        budget: u64,
    },
    Limits {
        d: u64,
        k: u64,
        r: u64,
    },
    Search {
        d: usize,
        k: usize,
        n_min: usize,
        n_max: usize,
        method: SearchMethod,
        budget: u64,
        cache: Option<FrontierCache>,
    },
    Conjecture {
        k: usize,
        n_max: usize,
        opts: ConjectureOptions,
        cache: Option<FrontierCache>,
    },
    Monotone {
        d: usize,
        k: usize,
        n_max: usize,
        budget: u64,
    },
    Simplex {
        d: usize,
        k: usize,
        mode: SimplexMode,
        seed: u64,
        samples: usize,
        steps: u32,
    },
    Cache {
        action: CacheAction,
        d: usize,
        k: usize,
        n_max: Option<usize>,
        cache: FrontierCache,
    },
}

/// Result of a job: a table (with whether all of its checks held) or raw bytes.
#[derive(Debug, Clone)]
pub enum Outcome {
    Table { report: Report, holds: bool },
    Raw(Vec<u8>),
}

impl Outcome {
    fn table(report: Report) -> Outcome {
        Outcome::Table { report, holds: true }
    }

    pub fn all_hold(&self) -> bool {
        match self {
            Outcome::Table { holds, .. } => *holds,
            Outcome::Raw(_) => true,
        }
    }

    pub fn report(&self) -> Option<&Report> {
        match self {
            Outcome::Table { report, .. } => Some(report),
            Outcome::Raw(_) => None,
        }
    }
}

fn pre(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(pre(msg()))
    }
}

fn check_tree_budget(n: usize, d: usize, strict: bool, budget: u64) -> CliResult<()> {
    let total = count_trees(n, d, strict)?;
    if total > BigUint::from(budget) {
        return Err(leafcount::Error::Budget {
            what: "number of trees",
            count: format!("{total} at n = {n}"),
            limit: budget.to_string(),
        }
        .into());
    }
    Ok(())
}

fn require_cache(config: &RunConfig) -> CliResult<FrontierCache> {
    config
        .cache_dir
        .as_ref()
        .map(FrontierCache::new)
        .ok_or_else(|| pre(format!("no cache directory: pass --cache-dir or set {}", crate::CACHE_ENV)))
}

/// Checks every precondition of the requested operation and builds its inputs.
pub fn prepare(config: &RunConfig) -> CliResult<Job> {
    match &config.command {
        Command::Count(a) | Command::Density(a) => {
            let pattern = a.pattern.build()?;
            let tree = a.host().build()?;
            need(tree.leaf_count() >= pattern.leaf_count(), || {
                format!(
                    "tree has {} leaves, fewer than the pattern's {}",
                    tree.leaf_count(),
                    pattern.leaf_count()
                )
            })?;
            let brute_cap = if a.brute {
                if a.allow_large {
                    Some(None)
                } else {
                    let subsets = binomial(tree.leaf_count() as u64, pattern.leaf_count() as u64);
                    if subsets > BigUint::from(BRUTE_FORCE_SUBSET_CAP) {
                        return Err(leafcount::Error::Budget {
                            what: "leaf subsets",
                            count: subsets.to_string(),
                            limit: BRUTE_FORCE_SUBSET_CAP.to_string(),
                        }
                        .into());
                    }
                    Some(Some(BRUTE_FORCE_SUBSET_CAP))
                }
            } else {
                None
            };
            Ok(Job::Count {
                pattern_label: a.pattern.to_string(),
                tree_label: a.host().to_string(),
                pattern,
                tree,
                brute_cap,
                density_only: matches!(config.command, Command::Density(_)),
            })
        }
        Command::Enumerate(a) => {
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.n >= 1, || "n must be at least 1".into())?;
            need(!a.strict || (a.n - 1) % (a.d - 1) == 0, || {
                format!("strictly {}-ary trees need n = 1 (mod {}), got n = {}", a.d, a.d - 1, a.n)
            })?;
            if let Some(k) = a.k {
                need(k >= 2 && k <= a.n, || format!("need 2 <= k <= n, got k = {k}, n = {}", a.n))?;
            }
            check_tree_budget(a.n, a.d, a.strict, a.budget)?;
            Ok(Job::Enumerate {
                n: a.n,
                d: a.d,
                strict: a.strict,
                k: a.k,
                budget: a.budget,
            })
        }
        Command::Limits(a) => {
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.r >= 2 && a.r <= a.d, || format!("need 2 <= r <= d, got r = {}, d = {}", a.r, a.d))?;
            need(a.k >= a.r && (a.k - 1) % (a.r - 1) == 0, || {
                format!("need k >= r and k = 1 (mod r-1), got k = {}, r = {}", a.k, a.r)
            })?;
            Ok(Job::Limits { d: a.d, k: a.k, r: a.r })
        }
        Command::SearchMin(a) => {
            let n_min = a.n_min.unwrap_or(a.k);
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.k >= 2, || format!("k = {} must be at least 2", a.k))?;
            need(n_min >= a.k, || format!("need n_min >= k, got n_min = {n_min}, k = {}", a.k))?;
            need(a.n_max >= n_min, || format!("need n_max >= n_min, got {} < {n_min}", a.n_max))?;
            let cache = match a.method {
                SearchMethod::Exhaustive => {
                    check_tree_budget(a.n_max, a.d, false, a.budget)?;
                    None
                }
                SearchMethod::Pareto => {
                    need(a.k >= 3, || "the Pareto method needs k >= 3".into())?;
                    config.cache_dir.as_ref().map(FrontierCache::new)
                }
            };
            Ok(Job::Search {
                d: a.d,
                k: a.k,
                n_min,
                n_max: a.n_max,
                method: a.method,
                budget: a.budget,
                cache,
            })
        }
        Command::Conjecture(a) => {
            need(a.k >= 3, || format!("k = {} must be at least 3", a.k))?;
            need(a.n_max >= a.k, || format!("need n_max >= k, got n_max = {}, k = {}", a.n_max, a.k))?;
            let validate_to = a.validate_upto.min(a.n_max);
            if validate_to >= a.k {
                check_tree_budget(validate_to, 2, false, a.budget)?;
            }
            Ok(Job::Conjecture {
                k: a.k,
                n_max: a.n_max,
                opts: ConjectureOptions {
                    validate_upto: a.validate_upto,
                    tree_budget: a.budget,
                },
                cache: config.cache_dir.as_ref().map(FrontierCache::new),
            })
        }
        Command::Monotone(a) => {
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.k >= 2, || format!("k = {} must be at least 2", a.k))?;
            need(a.n_max >= a.k, || format!("need n_max >= k, got n_max = {}, k = {}", a.n_max, a.k))?;
            check_tree_budget(a.n_max, a.d, false, a.budget)?;
            Ok(Job::Monotone {
                d: a.d,
                k: a.k,
                n_max: a.n_max,
                budget: a.budget,
            })
        }
        Command::Simplex(a) => {
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.k >= 3, || format!("k = {} must be at least 3", a.k))?;
            match a.mode {
                SimplexMode::Min => {}
                SimplexMode::Sup => need(a.steps >= 1 && a.steps <= MAX_STEPS, || {
                    format!("steps = {} must lie in 1..={MAX_STEPS}", a.steps)
                })?,
                SimplexMode::BoundSample => need(a.samples >= 1, || "samples must be at least 1".into())?,
                SimplexMode::Muirhead => {
                    need(a.samples >= 1, || "samples must be at least 1".into())?;
                    need(a.d <= MUIRHEAD_MAX_D, || {
                        format!("muirhead mode sums over d! permutations; d = {} exceeds {MUIRHEAD_MAX_D}", a.d)
                    })?;
                }
            }
            Ok(Job::Simplex {
                d: a.d,
                k: a.k,
                mode: a.mode,
                seed: a.seed,
                samples: a.samples,
                steps: a.steps,
            })
        }
        Command::Cache(a) => {
            let cache = require_cache(config)?;
            need(a.d >= 2, || format!("d = {} must be at least 2", a.d))?;
            need(a.k >= 3, || format!("k = {} must be at least 3", a.k))?;
            if a.action == CacheAction::Build {
                need(a.n_max.is_some(), || "cache build needs --n-max".into())?;
            }
            Ok(Job::Cache {
                action: a.action,
                d: a.d,
                k: a.k,
                n_max: a.n_max,
                cache,
            })
        }
    }
}

fn bool_cell(b: bool) -> String {
    b.to_string()
}

fn ratio_cells(r: &ExactRatio) -> [String; 3] {
    [r.numer().to_string(), r.denom().to_string(), decimal(r)]
}

fn point_cell(p: &SimplexPoint) -> String {
    p.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn exponents_cell(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(";")
}

fn codes_cell(trees: &[Tree]) -> String {
    trees.iter().map(|t| t.code()).collect::<Vec<_>>().join(" ")
}

const MIN_COLUMNS: [(&str, &str); 5] = [
    ("min_count", "minimum number of caterpillar copies"),
    ("min_density_num", "minimum density, numerator"),
    ("min_density_den", "minimum density, denominator"),
    ("min_density_decimal", "minimum density, 12 decimals"),
    ("argmin_code", "canonical codes of minimisers, space separated"),
];

fn min_cells(m: &Minimum) -> Vec<String> {
    let [num, den, dec] = ratio_cells(&m.density);
    vec![m.count.to_string(), num, den, dec, codes_cell(&m.argmin)]
}

fn with_columns(title: String, lead: &[(&'static str, &'static str)], tail: &[(&'static str, &'static str)]) -> Report {
    let cols: Vec<(&'static str, &'static str)> = lead.iter().chain(MIN_COLUMNS.iter()).chain(tail).copied().collect();
    Report::new(title, &cols)
}

impl Job {
    pub fn execute(self) -> CliResult<Outcome> {
        match self {
            Job::Count {
                pattern,
                pattern_label,
                tree,
                tree_label,
                brute_cap,
                density_only,
            } => {
                let count = match brute_cap {
                    Some(cap) => count_copies_brute_with_cap(&pattern, &tree, cap)?,
                    None => CountingEngine::new().count(&pattern, &tree),
                };
                let density = count_to_ratio(&count)
                    / count_to_ratio(&binomial(tree.leaf_count() as u64, pattern.leaf_count() as u64));
                let [num, den, dec] = ratio_cells(&density);
                let mut cols = vec![
                    ("pattern", "pattern as given"),
                    ("tree", "host tree as given"),
                    ("pattern_leaves", "leaves of the pattern"),
                    ("tree_leaves", "leaves of the host"),
                ];
                let mut row = vec![
                    pattern_label,
                    tree_label,
                    pattern.leaf_count().to_string(),
                    tree.leaf_count().to_string(),
                ];
                if !density_only {
                    cols.push(("count", "leaf subsets inducing a copy of the pattern"));
                    row.push(count.to_string());
                }
                cols.extend([
                    ("density_num", "count over C(tree_leaves, pattern_leaves), numerator"),
                    ("density_den", "density denominator"),
                    ("density_decimal", "density, 12 decimals"),
                ]);
                row.extend([num, den, dec]);
                let mut report = Report::new(if density_only { "density" } else { "count" }, &cols);
                report.push(row);
                Ok(Outcome::table(report))
            }
            Job::Enumerate { n, d, strict, k, budget } => {
                let mut catalog = TreeCatalog::with_budget(d, strict, budget)?;
                let trees = catalog.trees(n)?;
                let mut cols = vec![
                    ("index", "position in canonical order"),
                    ("code", "canonical code"),
                    ("leaves", "leaf count"),
                ];
                if k.is_some() {
                    cols.extend([
                        ("caterpillar_count", "copies of the binary caterpillar with k leaves"),
                        ("density_num", "caterpillar density, numerator"),
                        ("density_den", "caterpillar density, denominator"),
                        ("density_decimal", "caterpillar density, 12 decimals"),
                    ]);
                }
                let kind = if strict { "strictly " } else { "" };
                let mut report = Report::new(format!("{kind}{d}-ary trees with {n} leaves"), &cols);
                let mut counter = k.map(CaterpillarCounter::new).transpose()?;
                let total = count_to_ratio(&binomial(n as u64, k.unwrap_or(0) as u64));
                for (i, t) in trees.iter().enumerate() {
                    let mut row = vec![i.to_string(), t.code().to_string(), n.to_string()];
                    if let Some(c) = counter.as_mut() {
                        let copies = c.top(t);
                        let [num, den, dec] = ratio_cells(&(count_to_ratio(&copies) / &total));
                        row.extend([copies.to_string(), num, den, dec]);
                    }
                    report.push(row);
                }
                Ok(Outcome::table(report))
            }
            Job::Limits { d, k, r } => {
                let limit = LimitValue::compute(d, k, r)?;
                let mut report = Report::new(
                    "limiting caterpillar density in complete trees",
                    &[
                        ("d", "arity of the complete tree"),
                        ("k", "caterpillar leaves"),
                        ("r", "caterpillar arity"),
                        ("value", "exact limit as num/den"),
                        ("decimal", "limit, 12 decimals"),
                    ],
                );
                report.push(vec![
                    d.to_string(),
                    k.to_string(),
                    r.to_string(),
                    limit.value.to_string(),
                    decimal(&limit.value),
                ]);
                Ok(Outcome::table(report))
            }
            Job::Search {
                d,
                k,
                n_min,
                n_max,
                method,
                budget,
                cache,
            } => {
                let mut report = with_columns(
                    format!("minimum density of F^2_{k} in {d}-ary trees"),
                    &[("n", "leaf count"), ("class", "all d-ary trees or strictly d-ary only")],
                    &[],
                );
                match method {
                    SearchMethod::Exhaustive => {
                        let r = exhaustive_minima(d, k, n_min, n_max, budget)?;
                        for row in &r.rows {
                            let mut cells = vec![row.n.to_string(), "all".to_string()];
                            cells.extend(min_cells(&row.min));
                            report.push(cells);
                            if let Some(s) = &row.strict_min {
                                let mut cells = vec![row.n.to_string(), "strict".to_string()];
                                cells.extend(min_cells(s));
                                report.push(cells);
                            }
                        }
                    }
                    SearchMethod::Pareto => {
                        let mut search = match &cache {
                            Some(c) => c.load_or_new(d, k)?,
                            None => ParetoSearch::with_arity(k, d)?,
                        };
                        search.extend_to(n_max)?;
                        if let Some(c) = &cache {
                            c.store(&search)?;
                        }
                        for n in n_min..=n_max {
                            let best = search.best(n);
                            let count = BigCount::from(best.top());
                            let m = Minimum {
                                density: count_to_ratio(&count) / count_to_ratio(&binomial(n as u64, k as u64)),
                                count,
                                argmin: best.witness.iter().cloned().collect(),
                            };
                            let mut cells = vec![n.to_string(), "all".to_string()];
                            cells.extend(min_cells(&m));
                            report.push(cells);
                        }
                    }
                }
                Ok(Outcome::table(report))
            }
            Job::Conjecture { k, n_max, opts, cache } => {
                let mut search = match &cache {
                    Some(c) => c.load_or_new(2, k)?,
                    None => ParetoSearch::new(k)?,
                };
                let r = verify_even_conjecture_with(&mut search, n_max, &opts)?;
                if let Some(c) = &cache {
                    c.store(&search)?;
                }
                let mut report = with_columns(
                    format!("even binary trees versus the minimum count of F^2_{k}"),
                    &[("n", "leaf count")],
                    &[
                        ("even_count", "copies in the even binary tree"),
                        ("even_is_minimal", "even tree attains the minimum"),
                        ("exhaustive_check", "Pareto minimum versus exhaustive search"),
                    ],
                );
                let mut counter = CaterpillarCounter::new(k)?;
                for row in &r.rows {
                    let verdict = |check: &str| r.verdicts.iter().find(|v| v.n == row.n && v.check == check);
                    let even = verdict("even_tree_is_minimal").expect("one verdict per n");
                    let even_count = counter.top(&Tree::even_binary(row.n)?).to_string();
                    let exhaustive = match verdict("pareto_equals_exhaustive") {
                        Some(v) if v.holds => "agree",
                        Some(_) => "disagree",
                        None => "skipped",
                    };
                    let mut cells = vec![row.n.to_string()];
                    cells.extend(min_cells(&row.min));
                    cells.extend([even_count, bool_cell(even.holds), exhaustive.to_string()]);
                    report.push(cells);
                }
                Ok(Outcome::Table {
                    report,
                    holds: r.all_hold(),
                })
            }
            Job::Monotone { d, k, n_max, budget } => {
                let r = verify_monotone_min_with_budget(d, k, n_max, budget)?;
                let limit = leafcount::liminf_density(d as u64, k as u64)?;
                let mut report = with_columns(
                    format!("monotonicity of the minimum density of F^2_{k} in {d}-ary trees"),
                    &[("n", "leaf count")],
                    &[
                        ("limit_num", "minimum asymptotic density, numerator"),
                        ("limit_den", "minimum asymptotic density, denominator"),
                        ("nondecreasing", "density at least the previous row's (empty on the first row)"),
                        ("below_limit", "density at most the limit"),
                    ],
                );
                for row in &r.rows {
                    let verdict = |check: &str| {
                        r.verdicts
                            .iter()
                            .find(|v| v.n == row.n && v.check == check)
                            .map(|v| bool_cell(v.holds))
                            .unwrap_or_default()
                    };
                    let mut cells = vec![row.n.to_string()];
                    cells.extend(min_cells(&row.min));
                    cells.extend([
                        limit.numer().to_string(),
                        limit.denom().to_string(),
                        verdict("nondecreasing"),
                        verdict("below_limit"),
                    ]);
                    report.push(cells);
                }
                Ok(Outcome::Table {
                    report,
                    holds: r.all_hold(),
                })
            }
            Job::Simplex {
                d,
                k,
                mode,
                seed,
                samples,
                steps,
            } => simplex(d, k, mode, seed, samples, steps),
            Job::Cache {
                action,
                d,
                k,
                n_max,
                cache,
            } => {
                let path = cache.path(d, k);
                match action {
                    CacheAction::Build => {
                        let mut search = cache.load_or_new(d, k)?;
                        search.extend_to(n_max.expect("validated"))?;
                        cache.store(&search)?;
                        let mut report = Report::new(
                            format!("frontier cache for d = {d}, k = {k}"),
                            &[
                                ("n", "leaf count"),
                                ("frontier_size", "non-dominated count vectors kept"),
                                ("min_count", "minimum copies of the caterpillar"),
                            ],
                        );
                        for n in 1..=search.n_max() {
                            report.push(vec![
                                n.to_string(),
                                search.frontier(n).len().to_string(),
                                search.min_count(n).to_string(),
                            ]);
                        }
                        Ok(Outcome::table(report))
                    }
                    CacheAction::Show => {
                        // validate before echoing
                        if cache.load(d, k)?.is_none() {
                            return Err(pre(format!("no cache file at {}", path.display())));
                        }
                        std::fs::read(&path).map(Outcome::Raw).map_err(|source| CliError::Io {
                            path: path.display().to_string(),
                            source,
                        })
                    }
                    CacheAction::Clear => {
                        let removed = cache.clear(d, k)?;
                        let mut report =
                            Report::new("cache clear", &[("path", "cache file"), ("removed", "whether a file was deleted")]);
                        report.push(vec![path.display().to_string(), bool_cell(removed)]);
                        Ok(Outcome::table(report))
                    }
                    CacheAction::Path => {
                        let mut report = Report::new("cache path", &[("path", "cache file")]);
                        report.push(vec![path.display().to_string()]);
                        Ok(Outcome::table(report))
                    }
                }
            }
        }
    }
}

fn simplex(d: usize, k: usize, mode: SimplexMode, seed: u64, samples: usize, steps: u32) -> CliResult<Outcome> {
    let upper = ratio(1, k as u64);
    let lower = uniform_value(d, k);
    match mode {
        SimplexMode::Min => {
            let r = minimize_f(d, k, seed)?;
            let target_f = leafcount::arith::ratio_to_f64(&lower);
            let [num, den, dec] = ratio_cells(&lower);
            let mut report = Report::new(
                format!("minimum of F_{{{d},{k}}}"),
                &[
                    ("point", "best point found, semicolon separated"),
                    ("value", "F at the point"),
                    ("target_num", "value at the uniform point, numerator"),
                    ("target_den", "value at the uniform point, denominator"),
                    ("target_decimal", "value at the uniform point, 12 decimals"),
                    ("value_error", "|value - target|"),
                    ("max_coord_error", "largest |x_i - 1/d|"),
                    ("residual", "largest tangent directional derivative"),
                    ("evaluations", "objective evaluations"),
                    ("converged", "every start met the tolerance within budget"),
                ],
            );
            let coord_err = r.point.iter().map(|x| (x - 1.0 / d as f64).abs()).fold(0.0, f64::max);
            report.push(vec![
                r.point.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(";"),
                format!("{:.12}", r.value),
                num,
                den,
                dec,
                format!("{:.3e}", (r.value - target_f).abs()),
                format!("{coord_err:.3e}"),
                format!("{:.3e}", r.residual),
                r.evaluations.to_string(),
                bool_cell(r.converged),
            ]);
            Ok(Outcome::Table {
                report,
                holds: r.converged,
            })
        }
        SimplexMode::Sup => {
            let eps = dyadic_schedule(steps);
            let values = sup_boundary_scan(d, k, &eps)?;
            let mut report = Report::new(
                format!("F_{{{d},{k}}} along (0, .., eps, 1 - eps)"),
                &[
                    ("eps", "path parameter"),
                    ("point", "exact coordinates, semicolon separated"),
                    ("value_num", "F, numerator"),
                    ("value_den", "F, denominator"),
                    ("value_decimal", "F, 12 decimals"),
                    ("gap_decimal", "1/k - F, 12 decimals"),
                    ("below_bound", "F <= 1/k"),
                ],
            );
            let mut holds = true;
            for (e, v) in eps.iter().zip(&values) {
                let [num, den, dec] = ratio_cells(v);
                let below = *v <= upper;
                holds &= below;
                report.push(vec![
                    e.to_string(),
                    point_cell(&SimplexPoint::edge_path(d, e)?),
                    num,
                    den,
                    dec,
                    decimal(&(&upper - v)),
                    bool_cell(below),
                ]);
            }
            Ok(Outcome::Table { report, holds })
        }
        SimplexMode::BoundSample => {
            let s = bound_sample(d, k, samples, seed)?;
            let mut report = Report::new(
                format!("F_{{{d},{k}}} at random interior points"),
                &[
                    ("point", "exact coordinates, semicolon separated"),
                    ("value_num", "F, numerator"),
                    ("value_den", "F, denominator"),
                    ("value_decimal", "F, 12 decimals"),
                    ("below_upper", "F <= 1/k"),
                    ("above_lower", "F >= (d-1)/(d^(k-1)-1)"),
                ],
            );
            for (p, v) in &s.points {
                let [num, den, dec] = ratio_cells(v);
                report.push(vec![
                    point_cell(p),
                    num,
                    den,
                    dec,
                    bool_cell(*v <= upper),
                    bool_cell(*v >= lower),
                ]);
            }
            Ok(Outcome::Table {
                report,
                holds: s.upper_violations == 0 && s.lower_violations == 0,
            })
        }
        SimplexMode::Muirhead => {
            let mut a = vec![k as u32 - 1, 1];
            a.resize(d, 0);
            let pairs: Vec<MajorizationPair> = sorted_exponent_tuples(d, k as u32)
                .into_iter()
                .map(|b| MajorizationPair::new(a.clone(), b))
                .collect::<leafcount::Result<_>>()?;
            let mut report = Report::new(
                format!("Muirhead comparisons for a = ({})", exponents_cell(&a)),
                &[
                    ("point", "exact coordinates, semicolon separated"),
                    ("b", "majorised exponent vector"),
                    ("a_sum", "symmetric sum for a, exact"),
                    ("b_sum", "symmetric sum for b, exact"),
                    ("difference_decimal", "a_sum - b_sum, 12 decimals"),
                    ("holds", "a_sum >= b_sum"),
                ],
            );
            let mut holds = true;
            for p in random_interior_points(d, samples, seed) {
                for pair in &pairs {
                    let (sa, sb) = muirhead_sums(pair, p.coords())?;
                    let ok = sa >= sb;
                    holds &= ok;
                    report.push(vec![
                        point_cell(&p),
                        exponents_cell(pair.b()),
                        sa.to_string(),
                        sb.to_string(),
                        decimal(&(&sa - &sb)),
                        bool_cell(ok),
                    ]);
                }
            }
            Ok(Outcome::Table { report, holds })
        }
    }
}
