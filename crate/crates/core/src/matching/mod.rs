//! Perfect matchings, 2-factors, and the split-node multigraph that turns
//! small balanced sets of a bidirected graph into 2-factors.

mod blossom;
mod tilde;
mod two_factor;

pub use tilde::{build_tilde, phi, phi_inv, EdgeOrigin, PhiError, TildeGraph};
pub use two_factor::{is_two_factor, min_weight_two_factor, TwoFactor, TwoFactorError};

use std::collections::BTreeMap;

/// An undirected multigraph with integer edge weights. Edge ids are the
/// positions in `edges`; loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl UndirectedGraph {
    pub fn new(node_count: usize, edges: Vec<(usize, usize, i64)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v, _)| u < node_count && v < node_count));
        UndirectedGraph { node_count, edges }
    }
}

pub type MatchingInstance = UndirectedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    /// Chosen edge ids, ascending.
    pub edges: Vec<usize>,
    pub weight: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("edge {0} references a node outside the graph")]
    BadEndpoint(usize),
}

/// Minimum total weight perfect matching of a general graph.
///
/// Loops are never matched. Among parallel edges only the lightest (lowest id
/// on ties) can be chosen. The result is deterministic for a given instance.
pub fn min_weight_perfect_matching(
    inst: &MatchingInstance,
) -> Result<PerfectMatching, MatchingError> {
    let n = inst.node_count;
    for (id, &(u, v, _)) in inst.edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(MatchingError::BadEndpoint(id));
        }
    }
    if n % 2 == 1 {
        return Err(MatchingError::NoPerfectMatching);
    }
    if n == 0 {
        return Ok(PerfectMatching { edges: vec![], weight: 0 });
    }

    // Collapse parallel edges and drop loops.
    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (id, &(u, v, w)) in inst.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        match best.get(&key) {
            Some(&old) if inst.edges[old].2 <= w => {}
            _ => {
                best.insert(key, id);
            }
        }
    }
    let ids: Vec<usize> = best.values().copied().collect();
    let max_w = ids.iter().map(|&id| inst.edges[id].2 as i128).max().unwrap_or(0);
    // Every perfect matching has n/2 edges, so maximizing (max_w + 1 - w)
    // over maximum-cardinality matchings minimizes w.
    let simple: Vec<(usize, usize, blossom::Weight)> = ids
        .iter()
        .map(|&id| {
            let (u, v, w) = inst.edges[id];
            (u, v, max_w + 1 - w as i128)
        })
        .collect();
    let mate = blossom::max_weight_matching(n, &simple, true);
    if mate.iter().any(|m| m.is_none()) {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut chosen: Vec<usize> = ids
        .iter()
        .filter(|&&id| {
            let (u, v, _) = inst.edges[id];
            mate[u] == Some(v)
        })
        .copied()
        .collect();
    chosen.sort_unstable();
    let weight = chosen.iter().map(|&id| inst.edges[id].2 as i128).sum();
    Ok(PerfectMatching { edges: chosen, weight })
}
