//! Pareto-frontier dynamic programming for the minimum of `c(F^2_k, T)`.
//!
//! For a tree with branches `T_1..T_m` and `j >= 3`,
//! `c(F^2_j, T) = sum_i c(F^2_j, T_i) + sum_{i != l} |T_i| c(F^2_{j-1}, T_l)`,
//! and `c(F^2_2, T) = C(|T|, 2)`. Every coefficient is nonnegative, so replacing
//! a branch by one whose vector `(c_3, .., c_k)` is componentwise no larger never
//! increases any coordinate of the result. It is therefore enough to keep, per
//! leaf count, the vectors that are not weakly dominated.
//!
//! Trees with more than two branches (arity `d > 2`) are assembled one branch at
//! a time through partial forests. A forest state carries the branch sums
//! `S_j = sum_i c_j(T_i)` for `2 <= j < k` next to the closed values `P_j`
//! (the counts of the tree obtained by hanging the forest under a new root), and
//! adding a branch `B` of size `b` to a forest of size `s` maps
//! `P_j -> P_j + c_j(B) + s c_{j-1}(B) + b S_{j-1}`, `S_j -> S_j + c_j(B)`.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::CaterpillarCounter;
use crate::error::{Error, Result};
use crate::tree::Tree;
use num_traits::ToPrimitive;

/// Default cap on the number of entries kept per leaf count.
pub const DEFAULT_FRONTIER_CAP: usize = 1_000_000;

/// A non-dominated vector `(c(F^2_3, T), .., c(F^2_k, T))` for some `n`-leaf tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierEntry {
    pub n: usize,
    pub vector: Vec<u128>,
    pub witness: Option<Tree>,
}

impl FrontierEntry {
    /// `c(F^2_k, T)` for the witness tree.
    pub fn top(&self) -> u128 {
        *self.vector.last().expect("k >= 3")
    }
}

/// One line of the JSON-lines frontier cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierRecord {
    pub n: usize,
    pub vector: Vec<u128>,
    pub witness: String,
}

#[derive(Debug, Clone)]
struct ForestState {
    size: usize,
    // S_2 .. S_{k-1}
    sums: Vec<u128>,
    // P_3 .. P_k
    closed: Vec<u128>,
    // (size, index) into the tree frontiers
    branches: Vec<(usize, usize)>,
}

impl ForestState {
    fn key(&self) -> Vec<u128> {
        let mut key = self.sums.clone();
        key.extend_from_slice(&self.closed);
        key
    }
}

fn overflow() -> Error {
    Error::budget("caterpillar count", "beyond 128 bits", u128::MAX)
}

fn choose2(n: usize) -> u128 {
    let n = n as u128;
    n * n.saturating_sub(1) / 2
}

/// Keeps the entries whose key is not weakly dominated by an earlier kept key.
///
/// Entries are sorted lexicographically (stably), so a dominating key always
/// precedes the keys it dominates and identical keys keep their first occurrence.
pub fn pareto_prune<T>(items: Vec<T>, key: impl Fn(&T) -> Vec<u128>) -> Vec<T> {
    let mut keyed: Vec<(Vec<u128>, T)> = items.into_iter().map(|t| (key(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut kept: Vec<(Vec<u128>, T)> = Vec::new();
    for (k, item) in keyed {
        let dominated = kept
            .iter()
            .any(|(other, _)| other.iter().zip(&k).all(|(a, b)| a <= b));
        if !dominated {
            kept.push((k, item));
        }
    }
    kept.into_iter().map(|(_, t)| t).collect()
}

/// Incremental frontier builder for fixed `(d, k)`.
#[derive(Debug, Clone)]
pub struct ParetoSearch {
    d: usize,
    k: usize,
    cap: usize,
    // trees[n]: frontier over n-leaf d-ary trees
    trees: Vec<Vec<FrontierEntry>>,
    // forests[m][n] for 2 <= m < d, pruned on the full forest state
    forests: Vec<Vec<Vec<ForestState>>>,
    built_forests: usize,
}

impl ParetoSearch {
    /// Binary search space; see [`ParetoSearch::with_arity`] for `d > 2`.
    pub fn new(k: usize) -> Result<ParetoSearch> {
        ParetoSearch::with_arity(k, 2)
    }

    pub fn with_arity(k: usize, d: usize) -> Result<ParetoSearch> {
        if k < 3 {
            return Err(Error::domain(format!("Pareto search needs k >= 3, got {k}")));
        }
        if d < 2 {
            return Err(Error::domain(format!("arity d = {d} must be at least 2")));
        }
        let leaf = FrontierEntry {
            n: 1,
            vector: vec![0; k - 2],
            witness: Some(Tree::leaf()),
        };
        Ok(ParetoSearch {
            d,
            k,
            cap: DEFAULT_FRONTIER_CAP,
            trees: vec![Vec::new(), vec![leaf]],
            forests: vec![vec![Vec::new(), Vec::new()]; d],
            built_forests: 1,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> ParetoSearch {
        self.cap = cap;
        self
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.k
    }

    /// Largest leaf count with a computed frontier.
    pub fn n_max(&self) -> usize {
        self.trees.len() - 1
    }

    pub fn frontier(&self, n: usize) -> &[FrontierEntry] {
        &self.trees[n]
    }

    /// Entry with the smallest `c(F^2_k)` (first in frontier order on ties).
    pub fn best(&self, n: usize) -> &FrontierEntry {
        self.trees[n]
            .iter()
            .min_by_key(|e| e.top())
            .expect("frontiers are never empty")
    }

    pub fn min_count(&self, n: usize) -> u128 {
        self.best(n).top()
    }

    pub fn extend_to(&mut self, n_max: usize) -> Result<()> {
        for n in self.trees.len()..=n_max {
            self.build_forests(n)?;
            let entries = self.close(n)?;
            self.trees.push(entries);
        }
        Ok(())
    }

    fn tree_as_forest(&self, size: usize, idx: usize) -> ForestState {
        let e = &self.trees[size][idx];
        let mut sums = Vec::with_capacity(self.k - 2);
        sums.push(choose2(size));
        sums.extend_from_slice(&e.vector[..self.k - 3]);
        ForestState {
            size,
            sums,
            closed: e.vector.clone(),
            branches: vec![(size, idx)],
        }
    }

    /// `c_j(B)` for the frontier tree `(size, idx)`, `1 <= j <= k`.
    fn branch_count(&self, size: usize, idx: usize, j: usize) -> u128 {
        match j {
            1 => size as u128,
            2 => choose2(size),
            _ => self.trees[size][idx].vector[j - 3],
        }
    }

    fn attach(&self, forest: &ForestState, size: usize, idx: usize) -> Result<ForestState> {
        let k = self.k;
        let s = forest.size as u128;
        let b = size as u128;
        let mut sums = forest.sums.clone();
        for j in 2..k {
            sums[j - 2] = sums[j - 2]
                .checked_add(self.branch_count(size, idx, j))
                .ok_or_else(overflow)?;
        }
        let mut closed = forest.closed.clone();
        for j in 3..=k {
            let add = self
                .branch_count(size, idx, j)
                .checked_add(s.checked_mul(self.branch_count(size, idx, j - 1)).ok_or_else(overflow)?)
                .and_then(|x| x.checked_add(b.checked_mul(forest.sums[j - 3])?))
                .ok_or_else(overflow)?;
            closed[j - 3] = closed[j - 3].checked_add(add).ok_or_else(overflow)?;
        }
        let mut branches = forest.branches.clone();
        branches.push((size, idx));
        Ok(ForestState {
            size: forest.size + size,
            sums,
            closed,
            branches,
        })
    }

    /// Two-branch forests with `n` leaves (unordered pairs of frontier trees).
    fn pairs(&self, n: usize) -> Result<Vec<ForestState>> {
        let chunks: Vec<Result<Vec<ForestState>>> = (1..=n / 2)
            .into_par_iter()
            .map(|a| {
                let b = n - a;
                let mut out = Vec::new();
                for i in 0..self.trees[a].len() {
                    let first = self.tree_as_forest(a, i);
                    let start = if a == b { i } else { 0 };
                    for j in start..self.trees[b].len() {
                        out.push(self.attach(&first, b, j)?);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for c in chunks {
            all.extend(c?);
        }
        Ok(all)
    }

    /// Forests with `m >= 3` branches and `n` leaves: an `(m-1)`-forest plus one tree.
    fn grow(&self, m: usize, n: usize) -> Result<Vec<ForestState>> {
        let chunks: Vec<Result<Vec<ForestState>>> = (1..n)
            .into_par_iter()
            .map(|b| {
                let s = n - b;
                let mut out = Vec::new();
                for forest in &self.forests[m - 1][s] {
                    for j in 0..self.trees[b].len() {
                        out.push(self.attach(forest, b, j)?);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for c in chunks {
            all.extend(c?);
        }
        Ok(all)
    }

    fn check_cap(&self, len: usize, n: usize) -> Result<()> {
        if len > self.cap {
            return Err(Error::budget(
                "frontier size",
                format!("{len} at n = {n} (d = {}, k = {})", self.d, self.k),
                self.cap,
            ));
        }
        Ok(())
    }

    /// Stores the pruned forests with fewer than `d` branches for leaf count `n`.
    fn build_forests(&mut self, n: usize) -> Result<()> {
        if n <= self.built_forests {
            return Ok(());
        }
        for m in 2..self.d {
            let raw = if m == 2 { self.pairs(n)? } else { self.grow(m, n)? };
            let pruned = pareto_prune(raw, ForestState::key);
            self.check_cap(pruned.len(), n)?;
            self.forests[m].push(pruned);
        }
        self.built_forests = n;
        Ok(())
    }

    fn close(&self, n: usize) -> Result<Vec<FrontierEntry>> {
        let mut candidates = Vec::new();
        for m in 2..=self.d {
            if m < self.d {
                candidates.extend(self.forests[m][n].iter().cloned());
            } else if m == 2 {
                candidates.extend(self.pairs(n)?);
            } else {
                candidates.extend(self.grow(m, n)?);
            }
        }
        let pruned = pareto_prune(candidates, |f| f.closed.clone());
        self.check_cap(pruned.len(), n)?;
        pruned
            .into_iter()
            .map(|f| {
                let branches = f
                    .branches
                    .iter()
                    .map(|&(size, idx)| self.trees[size][idx].witness.clone().expect("witness kept"))
                    .collect();
                Ok(FrontierEntry {
                    n,
                    vector: f.closed,
                    witness: Some(Tree::from_children(branches)?),
                })
            })
            .collect()
    }

    /// Writes every frontier entry for `1 <= n <= n_max` as one JSON object per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for level in &self.trees[1..] {
            for e in level {
                let record = FrontierRecord {
                    n: e.n,
                    vector: e.vector.clone(),
                    witness: e.witness.as_ref().map(|t| t.code().to_string()).unwrap_or_default(),
                };
                serde_json::to_writer(&mut out, &record)?;
                out.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// Restores frontiers from a cache written by [`ParetoSearch::write_jsonl`].
    ///
    /// Leaf counts must be contiguous from 1; every witness is re-counted and must
    /// reproduce its stored vector.
    pub fn read_jsonl<R: BufRead>(k: usize, d: usize, input: R) -> Result<ParetoSearch> {
        let mut search = ParetoSearch::with_arity(k, d)?;
        let mut levels: Vec<Vec<FrontierEntry>> = vec![Vec::new(), Vec::new()];
        let mut counter = CaterpillarCounter::new(k)?;
        for (line_no, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::domain(format!("cache read failed: {e}")))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: FrontierRecord = serde_json::from_str(&line)
                .map_err(|e| Error::domain(format!("cache line {}: {e}", line_no + 1)))?;
            let witness = Tree::parse(&record.witness)?;
            let recount: Vec<u128> = counter.counts(&witness).as_slice()[2..]
                .iter()
                .map(|c| c.to_u128().unwrap_or(u128::MAX))
                .collect();
            if witness.leaf_count() != record.n || recount != record.vector || !witness.is_d_ary(d) {
                return Err(Error::domain(format!(
                    "cache line {}: witness does not reproduce the stored vector",
                    line_no + 1
                )));
            }
            if record.n >= levels.len() {
                if record.n != levels.len() {
                    return Err(Error::domain(format!(
                        "cache line {}: leaf count {} skips {}",
                        line_no + 1,
                        record.n,
                        levels.len()
                    )));
                }
                levels.push(Vec::new());
            }
            levels[record.n].push(FrontierEntry {
                n: record.n,
                vector: record.vector,
                witness: Some(witness),
            });
        }
        for (n, level) in levels.into_iter().enumerate().skip(2) {
            if level.is_empty() {
                break;
            }
            search.build_forests(n)?;
            search.trees.push(level);
        }
        Ok(search)
    }
}

/// Per-`n` result of [`pareto_min_counts`].
#[derive(Debug, Clone)]
pub struct ParetoLevel {
    pub n: usize,
    pub frontier: Vec<FrontierEntry>,
    pub min_count: u128,
}

/// Frontiers and minimum `c(F^2_k)` for every `1 <= n <= n_max`.
pub fn pareto_min_counts(n_max: usize, k: usize, d: usize) -> Result<Vec<ParetoLevel>> {
    let mut search = ParetoSearch::with_arity(k, d)?;
    search.extend_to(n_max)?;
    Ok((1..=n_max)
        .map(|n| ParetoLevel {
            n,
            frontier: search.frontier(n).to_vec(),
            min_count: search.min_count(n),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::caterpillar_counts;
    use crate::extremal::enumerate::TreeCatalog;

    fn exhaustive_min(n: usize, k: usize, catalog: &mut TreeCatalog) -> u128 {
        let mut counter = CaterpillarCounter::new(k).unwrap();
        catalog
            .trees(n)
            .unwrap()
            .iter()
            .map(|t| counter.top(t).to_u128().unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn prune_keeps_non_dominated() {
        let items = vec![vec![3, 1], vec![1, 3], vec![2, 2], vec![3, 3], vec![1, 3]];
        let kept = pareto_prune(items, |v| v.clone());
        assert_eq!(kept, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn binary_matches_exhaustive() {
        let mut catalog = TreeCatalog::new(2, false).unwrap();
        for k in [3, 4, 5] {
            let mut search = ParetoSearch::new(k).unwrap();
            search.extend_to(12).unwrap();
            for n in k..=12 {
                assert_eq!(search.min_count(n), exhaustive_min(n, k, &mut catalog), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn ternary_matches_exhaustive() {
        let mut catalog = TreeCatalog::new(3, false).unwrap();
        for k in [3, 4] {
            let mut search = ParetoSearch::with_arity(k, 3).unwrap();
            search.extend_to(10).unwrap();
            for n in k..=10 {
                assert_eq!(search.min_count(n), exhaustive_min(n, k, &mut catalog), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn witnesses_reproduce_vectors() {
        let mut search = ParetoSearch::with_arity(4, 3).unwrap();
        search.extend_to(9).unwrap();
        for n in 2..=9 {
            for e in search.frontier(n) {
                let t = e.witness.as_ref().unwrap();
                assert_eq!(t.leaf_count(), n);
                assert!(t.is_d_ary(3));
                let v = caterpillar_counts(t, 4).unwrap();
                assert_eq!(v.get(3).to_u128().unwrap(), e.vector[0]);
                assert_eq!(v.get(4).to_u128().unwrap(), e.vector[1]);
            }
        }
    }

    #[test]
    fn n_eq_k_has_zero_minimum() {
        let mut search = ParetoSearch::new(6).unwrap();
        search.extend_to(6).unwrap();
        assert_eq!(search.min_count(6), 0);
        assert_eq!(search.min_count(4), 0);
    }

    #[test]
    fn cache_round_trip_and_resume() {
        let mut search = ParetoSearch::new(5).unwrap();
        search.extend_to(20).unwrap();
        let mut buf = Vec::new();
        search.write_jsonl(&mut buf).unwrap();
        let mut restored = ParetoSearch::read_jsonl(5, 2, buf.as_slice()).unwrap();
        assert_eq!(restored.n_max(), 20);
        restored.extend_to(30).unwrap();
        search.extend_to(30).unwrap();
        for n in 1..=30 {
            assert_eq!(restored.frontier(n), search.frontier(n));
        }

        let tampered = String::from_utf8(buf).unwrap().replacen("\"vector\":[0,0,0]", "\"vector\":[0,0,1]", 1);
        assert!(ParetoSearch::read_jsonl(5, 2, tampered.as_bytes()).is_err());
    }

    #[test]
    fn cap_refusal() {
        let mut search = ParetoSearch::with_arity(4, 3).unwrap().with_cap(0);
        assert!(search.extend_to(4).unwrap_err().is_budget());
    }
}
