#![allow(dead_code)]

use leafcount::Tree;
use proptest::prelude::*;

/// Random trees with outdegrees in `2..=d`, at most `max_leaves` leaves.
pub fn arb_tree(d: usize, max_leaves: usize) -> impl Strategy<Value = Tree> {
    let leaf = Just(Tree::leaf());
    leaf.prop_recursive(5, 32, d as u32, move |inner| {
        prop::collection::vec(inner, 2..=d).prop_map(|c| Tree::from_children(c).unwrap())
    })
    .prop_filter("too many leaves", move |t| t.leaf_count() <= max_leaves)
}

/// Shape with a fixed child order, for canonicalisation checks.
#[derive(Debug, Clone)]
pub enum Raw {
    Leaf,
    Node(Vec<Raw>),
}

impl Raw {
    pub fn write(&self) -> String {
        match self {
            Raw::Leaf => "*".to_string(),
            Raw::Node(c) => format!("({})", c.iter().map(Raw::write).collect::<String>()),
        }
    }
}

pub fn arb_raw(d: usize) -> impl Strategy<Value = Raw> {
    Just(Raw::Leaf).prop_recursive(4, 24, d as u32, move |inner| {
        prop::collection::vec(inner, 2..=d).prop_map(Raw::Node)
    })
}

// --- independent brute-force oracle ---

fn leaf_total(t: &Tree) -> usize {
    if t.is_leaf() {
        1
    } else {
        t.children().iter().map(leaf_total).sum()
    }
}

fn canon(mut parts: Vec<String>) -> String {
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    format!("({})", parts.concat())
}

/// Code of the subtree induced by the leaves whose depth-first index is in `keep`.
fn induced_code(t: &Tree, keep: &[bool], next: &mut usize) -> Option<String> {
    if t.is_leaf() {
        let i = *next;
        *next += 1;
        return keep[i].then(|| "*".to_string());
    }
    let mut parts: Vec<String> = t
        .children()
        .iter()
        .filter_map(|c| induced_code(c, keep, next))
        .collect();
    match parts.len() {
        0 => None,
        1 => parts.pop(),
        _ => Some(canon(parts)),
    }
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[bool])) {
    fn rec(i: usize, n: usize, left: usize, keep: &mut Vec<bool>, f: &mut dyn FnMut(&[bool])) {
        if left == 0 {
            f(keep);
            return;
        }
        if n - i < left {
            return;
        }
        keep[i] = true;
        rec(i + 1, n, left - 1, keep, f);
        keep[i] = false;
        rec(i + 1, n, left, keep, f);
    }
    let mut keep = vec![false; n];
    rec(0, n, k, &mut keep, f);
}

/// `c(D, T)` by checking every leaf subset of size `|D|`.
pub fn oracle_count(pattern: &Tree, tree: &Tree) -> u64 {
    let n = leaf_total(tree);
    let k = leaf_total(pattern);
    if k > n {
        return 0;
    }
    let target = pattern.code().to_string();
    let mut count = 0;
    subsets(n, k, &mut |keep| {
        if induced_code(tree, keep, &mut 0).as_deref() == Some(target.as_str()) {
            count += 1;
        }
    });
    count
}

/// Every d-ary tree with `n` leaves, built by brute force from all ordered
/// child sequences and deduplicated by code.
pub fn oracle_trees(n: usize, d: usize) -> Vec<String> {
    fn build(n: usize, d: usize, memo: &mut Vec<Option<Vec<String>>>) -> Vec<String> {
        if let Some(v) = &memo[n] {
            return v.clone();
        }
        let mut out = std::collections::BTreeSet::new();
        if n == 1 {
            out.insert("*".to_string());
        }
        // ordered compositions of n into 2..=d parts
        fn comps(n: usize, parts: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            if parts == 0 {
                if n == 0 {
                    all.push(cur.clone());
                }
                return;
            }
            for s in 1..=n {
                cur.push(s);
                comps(n - s, parts - 1, cur, all);
                cur.pop();
            }
        }
        for m in 2..=d.min(n) {
            let mut all = Vec::new();
            comps(n, m, &mut Vec::new(), &mut all);
            for comp in all {
                let options: Vec<Vec<String>> = comp.iter().map(|&s| build(s, d, memo)).collect();
                let mut idx = vec![0; m];
                loop {
                    out.insert(canon(idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect()));
                    let mut p = 0;
                    while p < m {
                        idx[p] += 1;
                        if idx[p] < options[p].len() {
                            break;
                        }
                        idx[p] = 0;
                        p += 1;
                    }
                    if p == m {
                        break;
                    }
                }
            }
        }
        let v: Vec<String> = out.into_iter().collect();
        memo[n] = Some(v.clone());
        v
    }
    let mut memo = vec![None; n + 1];
    build(n, d, &mut memo)
}

/// Wedderburn-Etherington numbers `a(1..=n)` from the halving recurrence.
pub fn wedderburn_etherington(n: usize) -> Vec<u64> {
    let mut a = vec![0u64; n + 1];
    if n >= 1 {
        a[1] = 1;
    }
    for m in 2..=n {
        let mut s = 0;
        let mut i = 1;
        while 2 * i < m {
            s += a[i] * a[m - i];
            i += 1;
        }
        if m % 2 == 0 {
            let h = a[m / 2];
            s += h * (h + 1) / 2;
        }
        a[m] = s;
    }
    a
}
