//! Cycle versus complete multipartite Ramsey goodness.
//!
//! Certifying checkers for the expansion notions, the gadget and gadget-cycle
//! constructions, Pósa rotation, and the engines that turn a two-coloring of K_N into
//! a red cycle of a prescribed length or a blue complete multipartite graph.

pub mod cli;
pub mod embedding;
pub mod error;
pub mod expander;
pub mod gadget;
pub mod gadget_cycle;
pub mod graph;
pub mod posa;
pub mod profile;
pub mod ramsey;
pub mod search;

pub use error::{Error, Result};
