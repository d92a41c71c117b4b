//! Copy counts `c(D, T)` and densities of leaf-induced subtrees.
//!
//! Three routes are provided:
//!
//! * [`count_copies_brute`] enumerates every leaf subset of `T` of size `|D|`
//!   and compares the induced tree's canonical code with `D`'s.
//! * [`CountingEngine`] evaluates the branch recursion: copies lying inside a
//!   single branch of `T`, plus copies whose root is `T`'s root, obtained by
//!   distributing the branches of `D` injectively over the branches of `T`.
//! * [`caterpillar_counts`] specialises the recursion to binary caterpillars,
//!   computing `c(F^2_j, T)` for all `j <= k` in a single bottom-up pass.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{ToPrimitive, Zero};

use crate::arith::{binomial, count_to_ratio, BigCount, ExactRatio};
use crate::error::{Error, Result};
use crate::tree::Tree;

/// Default cap on the number of subsets the brute-force counter visits.
pub const BRUTE_FORCE_SUBSET_CAP: u64 = 100_000_000;

/// Branches of a pattern grouped into isomorphism classes, together with the
/// representative set of class sequences (one per distinct arrangement).
#[derive(Debug, Clone)]
pub struct BranchPattern {
    classes: Vec<Tree>,
    multiplicities: Vec<usize>,
    arrangements: Vec<Vec<usize>>,
}

impl BranchPattern {
    pub fn new(pattern: &Tree) -> BranchPattern {
        let mut classes: Vec<Tree> = Vec::new();
        let mut multiplicities = Vec::new();
        // children are sorted canonically, so isomorphic branches are adjacent
        for child in pattern.children() {
            match classes.last() {
                Some(last) if last == child => *multiplicities.last_mut().unwrap() += 1,
                _ => {
                    classes.push(child.clone());
                    multiplicities.push(1);
                }
            }
        }
        let arrangements = multiset_permutations(&multiplicities);
        BranchPattern {
            classes,
            multiplicities,
            arrangements,
        }
    }

    pub fn classes(&self) -> &[Tree] {
        &self.classes
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Distinct sequences of class indices; its length is the multinomial
    /// `r! / (m_1! ... m_c!)`.
    pub fn arrangements(&self) -> &[Vec<usize>] {
        &self.arrangements
    }

    pub fn branch_count(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// All distinct sequences containing class `i` exactly `mult[i]` times, in lexicographic order.
fn multiset_permutations(mult: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: &mut [usize], current: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for class in 0..left.len() {
            if left[class] > 0 {
                left[class] -= 1;
                current.push(class);
                rec(left, current, len, out);
                current.pop();
                left[class] += 1;
            }
        }
    }
    let len = mult.iter().sum();
    let mut left = mult.to_vec();
    let mut out = Vec::new();
    rec(&mut left, &mut Vec::with_capacity(len), len, &mut out);
    out
}

/// Calls `f` with every increasing `r`-subset of `0..m`.
fn for_each_subset(m: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > m {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        // advance to next combination
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

type MemoKey = (Arc<str>, Arc<str>);

/// Memoised evaluator of the branch recursion.
///
/// The memo is keyed by the pair of canonical codes and shared by all queries
/// against one engine; reads take a shared lock, insertions an exclusive one.
#[derive(Debug, Default)]
pub struct CountingEngine {
    memo: RwLock<HashMap<MemoKey, BigCount>>,
}

impl CountingEngine {
    pub fn new() -> CountingEngine {
        CountingEngine::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn count(&self, pattern: &Tree, tree: &Tree) -> BigCount {
        if pattern.is_leaf() {
            return BigCount::from(tree.leaf_count());
        }
        if pattern.leaf_count() > tree.leaf_count() || tree.is_leaf() {
            return BigCount::zero();
        }
        let key = (pattern.code_arc(), tree.code_arc());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }

        let mut total: BigCount = tree
            .children()
            .iter()
            .map(|branch| self.count(pattern, branch))
            .sum();

        let shape = BranchPattern::new(pattern);
        let r = shape.branch_count();
        let m = tree.children().len();
        if r <= m {
            // table[class][branch] = c(D_class, T_branch)
            let table: Vec<Vec<BigCount>> = shape
                .classes()
                .iter()
                .map(|class| tree.children().iter().map(|b| self.count(class, b)).collect())
                .collect();
            for_each_subset(m, r, |subset| {
                for seq in shape.arrangements() {
                    let mut prod = BigCount::from(1u32);
                    for (&class, &branch) in seq.iter().zip(subset) {
                        let c = &table[class][branch];
                        if c.is_zero() {
                            prod = BigCount::zero();
                            break;
                        }
                        prod *= c;
                    }
                    total += prod;
                }
            });
        }

        self.memo
            .write()
            .expect("memo lock")
            .insert(key, total.clone());
        total
    }

    pub fn density(&self, pattern: &Tree, tree: &Tree) -> Result<ExactRatio> {
        density_from_count(&self.count(pattern, tree), pattern, tree)
    }
}

/// `c(D, T)` via the branch recursion with a fresh memo.
pub fn count_copies(pattern: &Tree, tree: &Tree) -> BigCount {
    CountingEngine::new().count(pattern, tree)
}

/// `c(D, T) / C(|T|, |D|)`, reduced.
pub fn density(pattern: &Tree, tree: &Tree) -> Result<ExactRatio> {
    CountingEngine::new().density(pattern, tree)
}

pub(crate) fn density_from_count(count: &BigCount, pattern: &Tree, tree: &Tree) -> Result<ExactRatio> {
    let (k, n) = (pattern.leaf_count(), tree.leaf_count());
    if n < k {
        return Err(Error::domain(format!(
            "density needs |T| >= |D|, got |T| = {n} < |D| = {k}"
        )));
    }
    Ok(count_to_ratio(count) / count_to_ratio(&binomial(n as u64, k as u64)))
}

/// The tree induced by `leaves`, indexed in depth-first order of the canonical orientation.
pub fn induced_subtree(tree: &Tree, leaves: &[usize]) -> Result<Tree> {
    let mut sorted = leaves.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(Error::domain("induced subtree needs a nonempty leaf set"));
    }
    if let Some(&last) = sorted.last() {
        if last >= tree.leaf_count() {
            return Err(Error::domain(format!(
                "leaf index {last} out of range for a tree with {} leaves",
                tree.leaf_count()
            )));
        }
    }
    Ok(induce(tree, 0, &sorted).expect("nonempty selection"))
}

/// Induced tree of the selected leaves inside `tree`, whose first leaf has index `base`.
/// `selected` is sorted and restricted to this subtree's index range.
fn induce(tree: &Tree, base: usize, selected: &[usize]) -> Option<Tree> {
    if selected.is_empty() {
        return None;
    }
    if selected.len() == tree.leaf_count() {
        return Some(tree.clone());
    }
    let mut parts = Vec::new();
    let mut offset = base;
    let mut rest = selected;
    for child in tree.children() {
        let end = offset + child.leaf_count();
        let split = rest.partition_point(|&i| i < end);
        if let Some(t) = induce(child, offset, &rest[..split]) {
            parts.push(t);
        }
        rest = &rest[split..];
        offset = end;
    }
    if parts.len() == 1 {
        parts.pop()
    } else {
        Some(Tree::from_children(parts).expect("at least two parts"))
    }
}

fn check_subset_budget(n: usize, k: usize, cap: Option<u64>) -> Result<()> {
    if let Some(cap) = cap {
        let subsets = binomial(n as u64, k as u64);
        if subsets > BigCount::from(cap) {
            return Err(Error::budget("brute-force subset count", subsets, cap));
        }
    }
    Ok(())
}

/// Visits every `k`-subset of the leaves and calls `f` with the induced tree.
fn for_each_induced(tree: &Tree, k: usize, mut f: impl FnMut(Tree)) {
    let n = tree.leaf_count();
    for_each_subset(n, k, |subset| f(induce(tree, 0, subset).expect("nonempty")));
}

/// `c(D, T)` by enumerating all `C(|T|, |D|)` leaf subsets.
///
/// Refuses to visit more than [`BRUTE_FORCE_SUBSET_CAP`] subsets; see
/// [`count_copies_brute_with_cap`] to override.
pub fn count_copies_brute(pattern: &Tree, tree: &Tree) -> Result<BigCount> {
    count_copies_brute_with_cap(pattern, tree, Some(BRUTE_FORCE_SUBSET_CAP))
}

pub fn count_copies_brute_with_cap(pattern: &Tree, tree: &Tree, cap: Option<u64>) -> Result<BigCount> {
    let k = pattern.leaf_count();
    if k > tree.leaf_count() {
        return Ok(BigCount::zero());
    }
    check_subset_budget(tree.leaf_count(), k, cap)?;
    let mut hits = 0u64;
    for_each_induced(tree, k, |induced| {
        if induced.code() == pattern.code() {
            hits += 1;
        }
    });
    Ok(BigCount::from(hits))
}

/// Brute-force census: canonical code of every induced `k`-leaf tree, with multiplicity.
pub fn induced_census(tree: &Tree, k: usize) -> Result<HashMap<String, u64>> {
    let mut census = HashMap::new();
    if k == 0 || k > tree.leaf_count() {
        return Ok(census);
    }
    check_subset_budget(tree.leaf_count(), k, Some(BRUTE_FORCE_SUBSET_CAP))?;
    for_each_induced(tree, k, |induced| {
        *census.entry(induced.code().to_string()).or_insert(0) += 1;
    });
    Ok(census)
}

/// Counts `c(F^2_j, T)` for `1 <= j <= k`, where `F^2_1` is the single leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    n: usize,
    // counts[j - 1] = c(F^2_j, T)
    counts: Vec<BigCount>,
}

impl CountVector {
    pub fn leaves(&self) -> usize {
        self.n
    }

    pub fn max_order(&self) -> usize {
        self.counts.len()
    }

    /// `c(F^2_j, T)`; panics if `j` is 0 or above the computed order.
    pub fn get(&self, j: usize) -> &BigCount {
        assert!(j >= 1 && j <= self.counts.len(), "caterpillar order {j} not computed");
        &self.counts[j - 1]
    }

    pub fn as_slice(&self) -> &[BigCount] {
        &self.counts
    }
}

/// Memoised bottom-up evaluator of the caterpillar recursion.
///
/// Each internal vertex with branches `T_1..T_m` contributes, for `j >= 3`,
/// `sum_i c(F^2_j, T_i) + sum_{i != l} |T_i| c(F^2_{j-1}, T_l)`; the `j = 2`
/// entry is `C(|T|, 2)` since the two branches of `F^2_2` are isomorphic.
#[derive(Debug)]
pub struct CaterpillarCounter {
    k: usize,
    memo: HashMap<Arc<str>, Arc<Vec<BigCount>>>,
}

impl CaterpillarCounter {
    pub fn new(k: usize) -> Result<CaterpillarCounter> {
        if k < 2 {
            return Err(Error::domain(format!("caterpillar order k = {k} must be at least 2")));
        }
        Ok(CaterpillarCounter {
            k,
            memo: HashMap::new(),
        })
    }

    pub fn counts(&mut self, tree: &Tree) -> CountVector {
        CountVector {
            n: tree.leaf_count(),
            counts: self.vector(tree).as_ref().clone(),
        }
    }

    /// `c(F^2_k, T)` only.
    pub fn top(&mut self, tree: &Tree) -> BigCount {
        self.vector(tree)[self.k - 1].clone()
    }

    fn vector(&mut self, tree: &Tree) -> Arc<Vec<BigCount>> {
        if let Some(v) = self.memo.get(tree.code()) {
            return Arc::clone(v);
        }
        let out = if tree.is_leaf() {
            leaf_vector(self.k)
        } else {
            let branches: Vec<Arc<Vec<BigCount>>> =
                tree.children().iter().map(|c| self.vector(c)).collect();
            combine(self.k, &branches.iter().map(|b| b.as_slice()).collect::<Vec<_>>())
        };
        let out = Arc::new(out);
        self.memo.insert(tree.code_arc(), Arc::clone(&out));
        out
    }
}

fn leaf_vector(k: usize) -> Vec<BigCount> {
    let mut out = vec![BigCount::zero(); k];
    out[0] = BigCount::from(1u32);
    out
}

// branches[i][j - 1] = c(F^2_j, T_i), with branches[i][0] the leaf count
fn combine(k: usize, branches: &[&[BigCount]]) -> Vec<BigCount> {
    let n: BigCount = branches.iter().map(|b| &b[0]).sum();
    let mut out = vec![BigCount::zero(); k];
    out[1] = if n.is_zero() {
        BigCount::zero()
    } else {
        &n * (&n - 1u32) / 2u32
    };
    out[0] = n.clone();
    for j in 3..=k {
        let mut acc = BigCount::zero();
        for b in branches {
            acc += &b[j - 1];
        }
        // sum over ordered pairs i != l of |T_i| * c(F_{j-1}, T_l)
        for b in branches {
            let others = &n - &b[0];
            if !others.is_zero() && !b[j - 2].is_zero() {
                acc += &b[j - 2] * others;
            }
        }
        out[j - 1] = acc;
    }
    out
}

/// Count vector of the tree whose root has the given branches.
///
/// Only the leaf counts and the entries `j >= 3` of the inputs are read; the
/// output is nondecreasing in every one of them.
pub fn combine_branches(k: usize, branches: &[CountVector]) -> Result<CountVector> {
    if k < 2 {
        return Err(Error::domain(format!("caterpillar order k = {k} must be at least 2")));
    }
    if branches.iter().any(|b| b.counts.len() < k) {
        return Err(Error::domain(format!("every branch needs counts up to order {k}")));
    }
    let slices: Vec<Vec<BigCount>> = branches
        .iter()
        .map(|b| {
            let mut v = b.counts[..k].to_vec();
            v[0] = BigCount::from(b.n);
            v
        })
        .collect();
    let counts = combine(k, &slices.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    Ok(CountVector {
        n: branches.iter().map(|b| b.n).sum(),
        counts,
    })
}

impl CountVector {
    /// Builds a vector from raw entries `c(F^2_1) .. c(F^2_k)`, with `c(F^2_1)` taken as the leaf count.
    pub fn from_counts(counts: Vec<BigCount>) -> Result<CountVector> {
        let n = counts
            .first()
            .and_then(|c| c.to_usize())
            .ok_or_else(|| Error::domain("count vector needs a leaf count in usize range"))?;
        Ok(CountVector { n, counts })
    }
}

pub fn caterpillar_counts(tree: &Tree, k: usize) -> Result<CountVector> {
    Ok(CaterpillarCounter::new(k)?.counts(tree))
}
