use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Default refusal threshold for exhaustive enumeration, per leaf count.
pub const DEFAULT_TREE_BUDGET: u64 = 1_000_000;

fn check_params(n: usize, d: usize, strict: bool) -> Result<()> {
    if d < 2 {
        return Err(Error::domain(format!("arity d = {d} must be at least 2")));
    }
    if n == 0 {
        return Err(Error::domain("trees have at least one leaf"));
    }
    if strict && !(n - 1).is_multiple_of(d - 1) {
        return Err(Error::domain(format!(
            "strictly {d}-ary trees need n = 1 (mod {}), got n = {n}",
            d - 1
        )));
    }
    Ok(())
}

/// Number of d-ary (or strictly d-ary) trees with `n` leaves, up to isomorphism.
pub fn count_trees(n: usize, d: usize, strict: bool) -> Result<BigUint> {
    check_params(n, d, strict)?;
    Ok(tree_counts(n, d, strict).swap_remove(n))
}

/// `counts[s]` for every `s <= n`.
fn tree_counts(n: usize, d: usize, strict: bool) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); n + 1];
    if n >= 1 {
        counts[1] = BigUint::one();
    }
    for s in 2..=n {
        // ways[m][t]: multisets of m trees (sizes < s) with t leaves in total
        let mut ways = vec![vec![BigUint::zero(); s + 1]; d + 1];
        ways[0][0] = BigUint::one();
        for size in 1..s {
            if counts[size].is_zero() {
                continue;
            }
            let prev = ways.clone();
            for m in 1..=d {
                for t in size..=s {
                    let mut extra = BigUint::zero();
                    // take j >= 1 copies of this size
                    for j in 1..=m {
                        if j * size > t {
                            break;
                        }
                        let base = &prev[m - j][t - j * size];
                        if base.is_zero() {
                            continue;
                        }
                        extra += base * multiset_coefficient(&counts[size], j as u64);
                    }
                    ways[m][t] += extra;
                }
            }
        }
        let arities: Vec<usize> = if strict { vec![d] } else { (2..=d).collect() };
        counts[s] = arities.iter().map(|&m| ways[m][s].clone()).sum();
    }
    counts
}

/// Multisets of size `j` drawn from `types` kinds: `C(types + j - 1, j)`.
fn multiset_coefficient(types: &BigUint, j: u64) -> BigUint {
    match types.to_u64() {
        Some(t) => binomial(t + j - 1, j),
        None => {
            let mut acc = BigUint::one();
            for i in 0..j {
                acc *= types + i;
                acc /= i + 1;
            }
            acc
        }
    }
}

/// Caches the isomorphism classes of d-ary trees by leaf count.
///
/// Each per-size list is sorted by canonical code order and contains every class
/// exactly once. Trees of size `n` are assembled from nondecreasing sequences
/// (by size, then position in the size's list) of smaller trees.
#[derive(Debug, Clone)]
pub struct TreeCatalog {
    d: usize,
    strict: bool,
    budget: u64,
    by_size: Vec<Vec<Tree>>,
}

impl TreeCatalog {
    pub fn new(d: usize, strict: bool) -> Result<TreeCatalog> {
        TreeCatalog::with_budget(d, strict, DEFAULT_TREE_BUDGET)
    }

    pub fn with_budget(d: usize, strict: bool, budget: u64) -> Result<TreeCatalog> {
        check_params(1, d, false)?;
        Ok(TreeCatalog {
            d,
            strict,
            budget,
            by_size: vec![Vec::new(), vec![Tree::leaf()]],
        })
    }

    pub fn arity(&self) -> usize {
        self.d
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// All classes with `n` leaves, in canonical code order.
    pub fn trees(&mut self, n: usize) -> Result<&[Tree]> {
        check_params(n, self.d, self.strict)?;
        let total = count_trees(n, self.d, self.strict)?;
        if total > BigUint::from(self.budget) {
            return Err(Error::budget("number of trees", total, self.budget));
        }
        while self.by_size.len() <= n {
            let s = self.by_size.len();
            let fits = !self.strict || (s - 1).is_multiple_of(self.d - 1);
            let level = if fits { self.generate(s) } else { Vec::new() };
            self.by_size.push(level);
        }
        Ok(&self.by_size[n])
    }

    fn generate(&self, s: usize) -> Vec<Tree> {
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(self.d);
        self.extend(s, (1, 0), &mut chosen, &mut out);
        out.sort();
        out
    }

    /// Appends branches with keys >= `min_key` until `remaining` leaves are used.
    fn extend(&self, remaining: usize, min_key: (usize, usize), chosen: &mut Vec<Tree>, out: &mut Vec<Tree>) {
        if remaining == 0 {
            let arity_ok = if self.strict {
                chosen.len() == self.d
            } else {
                chosen.len() >= 2
            };
            if arity_ok {
                out.push(Tree::from_children(chosen.clone()).expect("at least two branches"));
            }
            return;
        }
        if chosen.len() == self.d {
            return;
        }
        let total = remaining + chosen.iter().map(Tree::leaf_count).sum::<usize>();
        for size in min_key.0..=remaining {
            // a single branch cannot be the whole tree
            if size == total {
                break;
            }
            let start = if size == min_key.0 { min_key.1 } else { 0 };
            for (idx, branch) in self.by_size[size].iter().enumerate().skip(start) {
                chosen.push(branch.clone());
                self.extend(remaining - size, (size, idx), chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Every isomorphism class of d-ary trees with `n` leaves, in canonical code order.
pub fn enumerate_trees(n: usize, d: usize, strict: bool) -> Result<impl Iterator<Item = Tree>> {
    let mut catalog = TreeCatalog::new(d, strict)?;
    let trees = catalog.trees(n)?.to_vec();
    Ok(trees.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_catalogs() {
        let trees: Vec<_> = enumerate_trees(4, 2, true).unwrap().collect();
        assert_eq!(trees.len(), 2);
        assert!(trees.contains(&Tree::caterpillar(2, 4).unwrap()));
        assert!(trees.contains(&Tree::complete(2, 2).unwrap()));

        let trees: Vec<_> = enumerate_trees(3, 3, false).unwrap().collect();
        assert_eq!(trees, vec![Tree::complete(3, 1).unwrap(), Tree::caterpillar(2, 3).unwrap()]);

        for d in 2..5 {
            let trees: Vec<_> = enumerate_trees(1, d, false).unwrap().collect();
            assert_eq!(trees, vec![Tree::leaf()]);
        }
    }

    #[test]
    fn strict_congruence_rejected() {
        assert!(matches!(enumerate_trees(4, 3, true), Err(Error::Domain(_))));
        assert!(enumerate_trees(5, 3, true).is_ok());
    }

    #[test]
    fn counts_agree_with_catalog() {
        for d in 2..=4 {
            for strict in [false, true] {
                let mut catalog = TreeCatalog::new(d, strict).unwrap();
                for n in 1..=10 {
                    if strict && (n - 1) % (d - 1) != 0 {
                        continue;
                    }
                    let trees = catalog.trees(n).unwrap().to_vec();
                    assert_eq!(BigUint::from(trees.len()), count_trees(n, d, strict).unwrap());
                    let codes: HashSet<_> = trees.iter().map(|t| t.code().to_string()).collect();
                    assert_eq!(codes.len(), trees.len());
                    for t in &trees {
                        assert_eq!(t.leaf_count(), n);
                        assert!(t.is_d_ary(d));
                        if strict {
                            assert!(t.is_strictly_d_ary(d));
                        }
                    }
                    assert!(trees.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn budget_refusal() {
        let mut catalog = TreeCatalog::with_budget(2, false, 5).unwrap();
        assert_eq!(catalog.trees(5).unwrap().len(), 3);
        assert!(catalog.trees(6).unwrap_err().is_budget());
    }
}
