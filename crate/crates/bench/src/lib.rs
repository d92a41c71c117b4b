//! Fixtures shared by the benchmarks.

use leafcount::Tree;

/// Complete binary, complete ternary and even binary hosts of comparable size.
pub fn hosts() -> Vec<(&'static str, Tree)> {
    vec![
        ("complete-2-10", Tree::complete(2, 10).unwrap()),
        ("complete-3-6", Tree::complete(3, 6).unwrap()),
        ("even-1000", Tree::even_binary(1000).unwrap()),
    ]
}

pub fn patterns() -> Vec<(&'static str, Tree)> {
    vec![
        ("caterpillar-2-5", Tree::caterpillar(2, 5).unwrap()),
        ("caterpillar-3-7", Tree::caterpillar(3, 7).unwrap()),
        ("complete-2-2", Tree::complete(2, 2).unwrap()),
    ]
}
