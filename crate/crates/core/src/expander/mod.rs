//! Expansion checkers, expander extraction, and path finding inside expanders.

pub mod check;
pub mod extract;
pub mod paths;

pub use check::{
    check_dmn_expander, check_dmn_expander_within, check_expands_into,
    check_expands_into_within, CheckMode, Clause, DmnParams, ExpansionParams, Status, Verdict,
};
pub use extract::{
    extract_bipartite_expander, extract_multipartite_expander, BipartiteExpander,
    MultipartiteExpander,
};
pub use paths::{expander_connectivity, expander_long_path, expander_short_path, Connectivity};
