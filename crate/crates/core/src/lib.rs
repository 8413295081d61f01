//! Exact minimum mean edge-simple cycles in bidirected graphs.
//!
//! The solver shifts weights by the current best mean and asks for a
//! minimum weight small balanced edge set, found as a minimum weight
//! 2-factor of a split-node multigraph. Directed, undirected, node-simple and
//! skew-symmetric inputs reduce to the bidirected case.

pub mod decompose;
pub mod graph;
pub mod matching;
pub mod oracles;
pub mod random;
pub mod rational;
pub mod reductions;
pub mod skew;
pub mod solver;

pub use decompose::{decompose_balanced, DecomposeError};
pub use graph::{
    cycle_mean, is_balanced, is_cycle, is_small, is_transit, set_weight, validate_bidirected,
    BidirectedGraph, CanonKey, Cycle, CycleError, Edge, EdgeId, InvalidGraph, NodeId, SetError,
    Sign, Step, Violation, Walk, WalkError,
};
pub use rational::{Overflow, Rational};
pub use solver::{solve_min_mean_cycle, IterationRecord, IterationTrace, Solution, SolveError};
