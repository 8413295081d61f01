//! Seeded instance generators shared by the benchmarks.

use bimean_core::matching::UndirectedGraph;
use bimean_core::random::{random_bidirected, random_strongly_connected, random_undirected};
use bimean_core::reductions::Digraph;
use bimean_core::BidirectedGraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const WEIGHTS: (i64, i64) = (-1000, 1000);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random bidirected graph with `m = 5n` edges.
pub fn bidirected(n: usize, seed: u64) -> BidirectedGraph {
    random_bidirected(&mut rng(seed), n, 5 * n, WEIGHTS)
}

/// A strongly connected digraph with `m = 4n` arcs.
pub fn directed(n: usize, seed: u64) -> Digraph {
    random_strongly_connected(&mut rng(seed), n, 4 * n, WEIGHTS)
}

/// A loop-free multigraph on an even number of nodes with `m = 3n` edges.
pub fn matching_instance(n: usize, seed: u64) -> UndirectedGraph {
    random_undirected(&mut rng(seed), 2 * n.div_ceil(2), 3 * n, WEIGHTS, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(bidirected(10, 1).edge_count(), 50);
        assert_eq!(directed(10, 1).arcs.len(), 40);
        assert_eq!(matching_instance(7, 1).node_count, 8);
        assert_eq!(bidirected(10, 3), bidirected(10, 3));
    }
}
