//! Exact, budgeted searches for cycles, complete multipartite subgraphs, paths of a
//! prescribed order, and systems of vertex-disjoint paths.
//!
//! Every search returns [`Search::Found`] with a witness, [`Search::Absent`] after an
//! exhaustive sweep, or [`Search::BudgetExhausted`]. Absence is never reported when
//! the sweep was cut short.

mod cycles;
mod flow;
mod multipartite;
mod paths;

pub use cycles::{find_cycle_at_least, find_cycle_exact, shorten_cycle_by_chords};
pub use flow::{vertex_disjoint_paths, vertex_disjoint_paths_within, DisjointPaths};
pub use multipartite::{find_complete_multipartite, is_complete_multipartite};
pub use paths::{find_path_of_order, longest_path_exhaustive};

use serde::Serialize;

/// Node budget for a backtracking search. `None` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { limit: None, used: 0 }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { limit: Some(limit), used: 0 }
    }

    pub fn from_option(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    /// Charges one node; false once the limit is exceeded.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.limit.is_none_or(|l| self.used <= l)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn exhausted(&self) -> bool {
        self.limit.is_some_and(|l| self.used > l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    BudgetExhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::BudgetExhausted => Search::BudgetExhausted,
        }
    }
}

/// Serializable witness: `{"kind": "cycle" | "multipartite" | "paths", ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Cycle { vertices: Vec<usize> },
    Multipartite { parts: Vec<Vec<usize>> },
    Paths { paths: Vec<Vec<usize>> },
}
