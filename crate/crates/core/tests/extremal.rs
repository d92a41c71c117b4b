mod common;

use std::collections::HashSet;

use common::{oracle_trees, wedderburn_etherington};
use leafcount::extremal::{
    count_trees, enumerate_trees, exhaustive_minima, pareto_min_counts, verify_even_conjecture, ParetoSearch,
};
use leafcount::{caterpillar_counts, count_copies, density, BigCount, Tree};
use num_bigint::BigUint;

#[test]
fn binary_counts_follow_the_halving_recurrence() {
    let we = wedderburn_etherington(18);
    for n in 1..=18 {
        assert_eq!(count_trees(n, 2, true).unwrap(), BigUint::from(we[n]), "n = {n}");
        assert_eq!(count_trees(n, 2, false).unwrap(), BigUint::from(we[n]));
    }
    for n in 1..=14 {
        assert_eq!(enumerate_trees(n, 2, false).unwrap().count() as u64, we[n]);
    }
}

#[test]
fn catalogs_match_brute_force_construction() {
    for d in 2..=4 {
        for n in 1..=8 {
            let ours: Vec<String> = enumerate_trees(n, d, false).unwrap().map(|t| t.code().to_string()).collect();
            let mut sorted = ours.clone();
            sorted.sort();
            assert_eq!(sorted, oracle_trees(n, d), "d = {d}, n = {n}");
        }
    }
}

#[test]
fn enumerated_trees_are_valid_and_distinct() {
    for d in 2..=4 {
        for strict in [false, true] {
            for n in (1..=10).filter(|n| !strict || (n - 1) % (d - 1) == 0) {
                let trees: Vec<Tree> = enumerate_trees(n, d, strict).unwrap().collect();
                let codes: HashSet<&str> = trees.iter().map(Tree::code).collect();
                assert_eq!(codes.len(), trees.len());
                for t in &trees {
                    assert!(t.is_d_ary(d));
                    assert!(!strict || t.is_strictly_d_ary(d));
                }
            }
        }
    }
}

#[test]
fn pareto_minima_equal_exhaustive_minima() {
    for k in 4..=5 {
        let levels = pareto_min_counts(16, k, 2).unwrap();
        let report = exhaustive_minima(2, k, k, 16, 1_000_000).unwrap();
        for row in &report.rows {
            let level = levels.iter().find(|l| l.n == row.n).unwrap();
            assert_eq!(BigCount::from(level.min_count), row.min.count, "k={k} n={}", row.n);
            assert!(!level.frontier.is_empty());
        }
    }
}

#[test]
fn frontier_witnesses_recount() {
    for (k, d) in [(4, 2), (5, 2), (4, 3)] {
        let mut search = ParetoSearch::with_arity(k, d).unwrap();
        search.extend_to(14).unwrap();
        for n in 1..=14 {
            assert!(!search.frontier(n).is_empty());
            for entry in search.frontier(n) {
                let w = entry.witness.as_ref().unwrap();
                assert_eq!(w.leaf_count(), n);
                assert!(w.is_d_ary(d));
                let v = caterpillar_counts(w, k).unwrap();
                let got: Vec<u128> = (3..=k).map(|j| v.get(j).try_into().unwrap()).collect();
                assert_eq!(got, entry.vector);
            }
        }
    }
}

#[test]
fn reported_minimisers_recount() {
    let report = exhaustive_minima(3, 4, 4, 9, 1_000_000).unwrap();
    let pattern = Tree::caterpillar(2, 4).unwrap();
    for row in &report.rows {
        for m in row.strict_min.iter().chain(std::iter::once(&row.min)) {
            for t in &m.argmin {
                assert_eq!(count_copies(&pattern, t), m.count);
                assert_eq!(density(&pattern, t).unwrap(), m.density);
            }
        }
    }
    let conj = verify_even_conjecture(5, 30).unwrap();
    assert!(conj.all_hold());
    for row in &conj.rows {
        for t in &row.min.argmin {
            assert_eq!(count_copies(&Tree::caterpillar(2, 5).unwrap(), t), row.min.count);
        }
    }
}
