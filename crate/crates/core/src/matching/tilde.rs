//! The undirected split-node multigraph of a bidirected graph.
//!
//! Node `v` becomes `ṽ₁` (index `2v`, collects entering endpoints) and `ṽ₂`
//! (index `2v + 1`, collects leaving endpoints). Edge `e` keeps its id and
//! joins the copies selected by its signs; a doubly-entering loop becomes an
//! undirected loop at `ṽ₁`. Each node also gets two parallel zero-weight
//! auxiliary edges `ṽ₁ ṽ₂`, with ids `m + 2v` and `m + 2v + 1`.

use super::{is_two_factor, two_factor::TwoFactor, UndirectedGraph};
use crate::graph::{is_balanced, is_small, BidirectedGraph, EdgeId, NodeId, SetError, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOrigin {
    Original(EdgeId),
    /// Auxiliary edge at a node; `copy` is 1 or 2.
    Auxiliary {
        node: NodeId,
        copy: u8,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeGraph {
    pub graph: UndirectedGraph,
    pub origin: Vec<EdgeOrigin>,
    original_edges: usize,
}

pub fn tilde_node(v: NodeId, sign: Sign) -> usize {
    match sign {
        Sign::In => 2 * v,
        Sign::Out => 2 * v + 1,
    }
}

pub fn build_tilde(bg: &BidirectedGraph) -> TildeGraph {
    let m = bg.edge_count();
    let n = bg.node_count();
    let mut edges = Vec::with_capacity(m + 2 * n);
    let mut origin = Vec::with_capacity(m + 2 * n);
    for e in bg.edges() {
        edges.push((
            tilde_node(e.ends[0], e.signs[0]),
            tilde_node(e.ends[1], e.signs[1]),
            e.weight,
        ));
        origin.push(EdgeOrigin::Original(e.id));
    }
    for v in 0..n {
        for copy in 1..=2 {
            edges.push((2 * v, 2 * v + 1, 0));
            origin.push(EdgeOrigin::Auxiliary { node: v, copy });
        }
    }
    TildeGraph { graph: UndirectedGraph::new(2 * n, edges), origin, original_edges: m }
}

impl TildeGraph {
    /// The same multigraph with original edges reweighted; auxiliary edges
    /// keep weight 0.
    pub fn reweighted(&self, original_weights: &[i64]) -> UndirectedGraph {
        assert_eq!(original_weights.len(), self.original_edges);
        let mut g = self.graph.clone();
        for (e, &w) in g.edges.iter_mut().zip(original_weights) {
            e.2 = w;
        }
        g
    }

    pub fn auxiliary_id(&self, node: NodeId, copy: u8) -> usize {
        self.original_edges + 2 * node + (copy as usize - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PhiError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("edge set is not small and balanced")]
    NotSmallBalanced,
    #[error("edge set is not a 2-factor of the split graph")]
    NotTwoFactor,
}

/// Maps a small balanced set to its 2-factor: the images of its edges plus
/// `2 - d` auxiliary edges at every node entered `d` times.
pub fn phi(bg: &BidirectedGraph, tilde: &TildeGraph, x: &[EdgeId]) -> Result<TwoFactor, PhiError> {
    if !is_balanced(bg, x)? || !is_small(bg, x)? {
        return Err(PhiError::NotSmallBalanced);
    }
    let mut entering = vec![0u8; bg.node_count()];
    for &id in x {
        let e = bg.edge(id);
        for s in 0..2 {
            if e.signs[s] == Sign::In {
                entering[e.ends[s]] += 1;
            }
        }
    }
    let mut edges: Vec<usize> = x.to_vec();
    for (v, &d) in entering.iter().enumerate() {
        for copy in 1..=(2 - d) {
            edges.push(tilde.auxiliary_id(v, copy));
        }
    }
    edges.sort_unstable();
    let weight = edges.iter().map(|&k| tilde.graph.edges[k].2 as i128).sum();
    debug_assert!(is_two_factor(&tilde.graph, &edges));
    Ok(TwoFactor { edges, weight })
}

/// Recovers the small balanced set from a 2-factor: its original edges.
pub fn phi_inv(tilde: &TildeGraph, f: &[usize]) -> Result<Vec<EdgeId>, PhiError> {
    if !is_two_factor(&tilde.graph, f) {
        return Err(PhiError::NotTwoFactor);
    }
    let mut x: Vec<EdgeId> = f
        .iter()
        .filter_map(|&k| match tilde.origin[k] {
            EdgeOrigin::Original(e) => Some(e),
            EdgeOrigin::Auxiliary { .. } => None,
        })
        .collect();
    x.sort_unstable();
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn arc_maps_to_leaving_and_entering_copies() {
        let bg = BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 4)]).unwrap();
        let t = build_tilde(&bg);
        // 1→2 joins 1̃₂ and 2̃₁
        assert_eq!(t.graph.edges[0], (1, 2, 4));
        assert_eq!(t.graph.node_count, 4);
        assert_eq!(t.graph.edges.len(), 1 + 4);
        assert_eq!(t.origin[3], EdgeOrigin::Auxiliary { node: 1, copy: 1 });
    }

    #[test]
    fn doubly_entering_loop_becomes_loop_at_first_copy() {
        let bg = BidirectedGraph::new(
            3,
            vec![
                Edge::new(0, 2, 2, Sign::In, Sign::In, 1),
                Edge::new(1, 0, 0, Sign::Out, Sign::Out, 1),
            ],
        )
        .unwrap();
        let t = build_tilde(&bg);
        assert_eq!(t.graph.edges[0], (4, 4, 1));
        assert_eq!(t.graph.edges[1], (1, 1, 1));
    }

    #[test]
    fn empty_set_is_all_auxiliary() {
        let bg =
            BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]).unwrap();
        let t = build_tilde(&bg);
        let f = phi(&bg, &t, &[]).unwrap();
        assert_eq!(f.edges, vec![2, 3, 4, 5]);
        assert_eq!(f.weight, 0);
        assert_eq!(phi_inv(&t, &f.edges).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn two_cycle_takes_one_auxiliary_per_node() {
        let bg =
            BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]).unwrap();
        let t = build_tilde(&bg);
        let f = phi(&bg, &t, &[0, 1]).unwrap();
        assert_eq!(f.edges, vec![0, 1, t.auxiliary_id(0, 1), t.auxiliary_id(1, 1)]);
        assert_eq!(f.weight, 4);
        assert_eq!(phi_inv(&t, &f.edges).unwrap(), vec![0, 1]);
    }

    #[test]
    fn errors() {
        let bg = BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3)]).unwrap();
        let t = build_tilde(&bg);
        assert_eq!(phi(&bg, &t, &[0]), Err(PhiError::NotSmallBalanced));
        assert_eq!(phi(&bg, &t, &[2]), Err(PhiError::Set(SetError::UnknownEdge(2))));
        assert_eq!(phi_inv(&t, &[0]), Err(PhiError::NotTwoFactor));
    }
}
