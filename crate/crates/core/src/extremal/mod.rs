//! Enumeration of d-ary trees and exact searches for minimum caterpillar densities.

pub mod cache;
pub mod enumerate;
pub mod pareto;
pub mod search;

pub use cache::FrontierCache;
pub use enumerate::{count_trees, enumerate_trees, TreeCatalog, DEFAULT_TREE_BUDGET};
pub use pareto::{pareto_min_counts, pareto_prune, FrontierEntry, FrontierRecord, ParetoLevel, ParetoSearch, DEFAULT_FRONTIER_CAP};
pub use search::{
    exhaustive_minima, min_density_exhaustive, verify_even_conjecture, verify_even_conjecture_with,
    verify_monotone_min, verify_monotone_min_with_budget, ConjectureOptions, Minimum, SearchMode, SearchParams,
    SearchReport, SearchRow, Verdict,
};
