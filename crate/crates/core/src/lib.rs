//! Leaf-induced subtree counting in rooted d-ary trees.
//!
//! Trees have no vertex of outdegree one and are identified by a canonical
//! bracket code (`*` is a leaf). Deleting all leaves of `T` outside a set `S`
//! and suppressing the resulting outdegree-one vertices gives the subtree
//! induced by `S`; `c(D, T)` counts the leaf sets inducing a copy of `D`.
//!
//! ```
//! use leafcount::{count_copies, Tree};
//!
//! let pattern = Tree::parse("(*(**))").unwrap();
//! let tree = Tree::complete(2, 3).unwrap();
//! assert_eq!(count_copies(&pattern, &tree), 56u32.into());
//! ```

pub mod arith;
pub mod closed_forms;
pub mod counting;
pub mod error;
pub mod extremal;
pub mod simplex;
pub mod tree;

pub use arith::{format_decimal, BigCount, ExactRatio};
pub use closed_forms::{
    asymptotic_min_copies, bk, bk_lower_bound, caterpillar_copies_complete, limit_density_complete, liminf_density,
    star_copies, LimitValue,
};
pub use counting::{
    caterpillar_counts, combine_branches, count_copies, count_copies_brute, density, induced_subtree, BranchPattern,
    CaterpillarCounter, CountVector, CountingEngine,
};
pub use error::{Error, Result};
pub use tree::{parse_tree, serialize, Tree};
