//! Embedding inside expanders: paths that avoid obstacles, rooted forests, systems of
//! disjoint paths between prescribed pairs, and short or long odd cycles.

mod connect;
mod cycles;
mod forest;
mod tree;

pub use connect::{connect_avoiding, connect_avoiding_bound, connect_pairs, pair_path_bound};
pub(crate) use connect::connect_pairs_within;
pub use cycles::{
    geodesic_report, long_odd_cycle, short_path_expansion_preserving, shortest_odd_cycle,
    LongOddCycle,
};
pub(crate) use cycles::{first_window, long_odd_cycle_unchecked};
pub use forest::{embed_forest, EmbeddedForest, EmbeddedTree};
pub(crate) use forest::embed_trees;
pub use tree::RootedTree;
