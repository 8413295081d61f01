//! Reductions from directed, undirected and node-simple inputs to the
//! bidirected edge-simple problem, with maps back to the original input.

use crate::graph::{BidirectedGraph, Cycle, CycleError, Edge, EdgeId, NodeId, Sign, Step, Walk};
use crate::matching::UndirectedGraph;

/// A directed multigraph. Arc ids are positions in `arcs`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    pub node_count: usize,
    /// `(tail, head, weight)`
    pub arcs: Vec<(NodeId, NodeId, i64)>,
}

impl Digraph {
    pub fn new(node_count: usize, arcs: Vec<(NodeId, NodeId, i64)>) -> Self {
        Digraph { node_count, arcs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("arc {arc} is a directed loop; subdivide it first")]
    DirectedLoop { arc: usize },
    #[error("arc {arc} references a node outside the graph")]
    DanglingArc { arc: usize },
    #[error("graph has no nodes")]
    NoNodes,
}

/// Arc `u → v` becomes edge `(Out@u, In@v)` with the same id.
pub fn directed_to_bidirected(d: &Digraph) -> Result<BidirectedGraph, ReductionError> {
    if d.node_count == 0 {
        return Err(ReductionError::NoNodes);
    }
    let mut edges = Vec::with_capacity(d.arcs.len());
    for (id, &(u, v, w)) in d.arcs.iter().enumerate() {
        if u >= d.node_count || v >= d.node_count {
            return Err(ReductionError::DanglingArc { arc: id });
        }
        if u == v {
            return Err(ReductionError::DirectedLoop { arc: id });
        }
        edges.push(Edge::arc(id, u, v, w));
    }
    Ok(BidirectedGraph::new(d.node_count, edges).expect("arcs form a valid bidirected graph"))
}

/// The directed cycle (arc ids) behind a cycle of [`directed_to_bidirected`].
pub fn directed_cycle_arcs(c: &Cycle) -> Vec<usize> {
    c.edge_ids()
}

/// A closed trail visiting distinct nodes, as `v_0 .. v_{k-1}` and the edges
/// `v_i v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

impl Circuit {
    pub fn weight(&self, u: &UndirectedGraph) -> i128 {
        self.edges.iter().map(|&e| u.edges[e].2 as i128).sum()
    }

    /// True iff nodes and edges are distinct and consecutive nodes are joined
    /// by the listed edges.
    pub fn is_circuit(&self, u: &UndirectedGraph) -> bool {
        let k = self.edges.len();
        if k == 0 || self.nodes.len() != k {
            return false;
        }
        let mut nodes = self.nodes.clone();
        nodes.sort_unstable();
        nodes.dedup();
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        edges.dedup();
        if nodes.len() != k || edges.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (self.nodes[i], self.nodes[(i + 1) % k]);
            match u.edges.get(self.edges[i]) {
                Some(&(x, y, _)) => (x, y) == (a, b) || (x, y) == (b, a),
                None => false,
            }
        })
    }
}

/// Maps cycles of the reduced undirected instance back to circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedBackMap {
    original_edges: usize,
}

impl UndirectedBackMap {
    /// Drops the loop steps; `|C|` halves and the weight is unchanged.
    pub fn circuit(&self, bg: &BidirectedGraph, c: &Cycle) -> Circuit {
        let (nodes, edges) = c
            .steps()
            .iter()
            .filter(|s| s.edge < self.original_edges)
            .map(|s| (s.tail(bg), s.edge))
            .unzip();
        Circuit { nodes, edges }
    }

    pub fn loop_of(&self, v: NodeId) -> EdgeId {
        self.original_edges + v
    }
}

/// Undirected edge `{u, v}` becomes a doubly-leaving edge with the same id
/// and weight; node `v` gets a zero-weight doubly-entering loop with id
/// `m + v`. Cycles alternate between the two kinds, so the optimal mean is
/// half the optimal circuit mean.
pub fn undirected_to_bidirected(
    u: &UndirectedGraph,
) -> Result<(BidirectedGraph, UndirectedBackMap), ReductionError> {
    if u.node_count == 0 {
        return Err(ReductionError::NoNodes);
    }
    let m = u.edges.len();
    let mut edges = Vec::with_capacity(m + u.node_count);
    for (id, &(a, b, w)) in u.edges.iter().enumerate() {
        if a >= u.node_count || b >= u.node_count {
            return Err(ReductionError::DanglingArc { arc: id });
        }
        edges.push(Edge::new(id, a, b, Sign::Out, Sign::Out, w));
    }
    for v in 0..u.node_count {
        edges.push(Edge::new(m + v, v, v, Sign::In, Sign::In, 0));
    }
    let bg = BidirectedGraph::new(u.node_count, edges).expect("reduction keeps invariants");
    Ok((bg, UndirectedBackMap { original_edges: m }))
}

/// Maps cycles of the split graph back to node-simple cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBackMap {
    original_edges: usize,
}

impl SplitBackMap {
    pub fn splitter(&self, v: NodeId) -> EdgeId {
        self.original_edges + v
    }

    /// Contracts the splitter edges; `|C|` halves and the weight is
    /// unchanged.
    pub fn cycle(&self, original: &BidirectedGraph, c: &Cycle) -> Result<Cycle, CycleError> {
        let steps: Vec<Step> =
            c.steps().iter().filter(|s| s.edge < self.original_edges).copied().collect();
        let start = steps.first().map(|s| s.tail(original)).unwrap_or(0);
        Cycle::new(original, Walk { start, steps })
    }
}

/// Node `v` becomes `v₁ = 2v` holding its entering endpoints and `v₂ = 2v + 1`
/// holding its leaving endpoints, joined by a zero-weight arc `v₁ → v₂` with
/// id `m + v`. Edge-simple cycles of the result are exactly the node-simple
/// cycles of `bg`, each with doubled length.
pub fn split_for_node_simple(bg: &BidirectedGraph) -> (BidirectedGraph, SplitBackMap) {
    let m = bg.edge_count();
    let side = |v: NodeId, s: Sign| match s {
        Sign::In => 2 * v,
        Sign::Out => 2 * v + 1,
    };
    let mut edges: Vec<Edge> = bg
        .edges()
        .iter()
        .map(|e| {
            Edge::new(
                e.id,
                side(e.ends[0], e.signs[0]),
                side(e.ends[1], e.signs[1]),
                e.signs[0],
                e.signs[1],
                e.weight,
            )
        })
        .collect();
    for v in 0..bg.node_count() {
        edges.push(Edge::arc(m + v, 2 * v, 2 * v + 1, 0));
    }
    let split = BidirectedGraph::new(2 * bg.node_count(), edges).expect("split keeps invariants");
    (split, SplitBackMap { original_edges: m })
}
