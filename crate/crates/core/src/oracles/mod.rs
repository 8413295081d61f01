//! Independent, deliberately simple engines used to cross-check the solver.

mod circuits;
mod enumerate;
mod karp;
mod subsets;

pub use circuits::brute_force_min_mean_circuit;
pub use enumerate::{
    enumerate_edge_simple_cycles, BudgetExceeded, OracleError, OracleResult, DEFAULT_MAX_EDGES,
    MAX_SEARCH_STEPS,
};
pub use karp::{karp_min_mean, KarpResult};
pub use subsets::{brute_force_min_mean, brute_force_min_mean_node_simple, MAX_SUBSET_EDGES};
