//! Local marking algorithm for minimum (total) dominating sets.
//!
//! The core algorithm lives in [`engine`]; [`kdistance`], [`dynamic`] and
//! [`setcover`] adapt it to distance-k domination, edge-update maintenance and
//! set cover. [`oracles`] holds the checkers, exact solver and greedy baseline
//! used to verify results, and [`bench`] runs multi-seed experiments.

pub mod bench;
pub mod dynamic;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod kdistance;
pub mod oracles;
pub mod record;
pub mod setcover;
pub mod tags;

pub use engine::{
    initial_mark, mark_by_weight, refine_round, simulate_rounds, solve, solve_with_tags, Choices,
    IsolatedPolicy, MessageTrace, Mode, RunConfig, Solution,
};
pub use error::{Error, Result};
pub use graph::{load_graph, read_graph, Graph, GraphBuilder, GraphFormat, LoadOptions, NodeId};
pub use kdistance::{power_graph, solve_kdistance, KConfig};
pub use tags::Tags;
