//! Skew-symmetric graphs and their correspondence with bidirected graphs.
//!
//! A skew-symmetric graph is a directed multigraph with a fixed-point-free
//! involution on nodes (`v ↦ v'`) and one on arcs (`a ↦ a'`) such that the
//! mate of an arc `u → v` runs `v' → u'`. Choosing one node from every mate
//! pair (the set `V1`) collapses each arc mate pair into one bidirected edge:
//! an arc end at a `V1` node keeps its direction, an end at a mate flips it.
//! Walks correspond one-to-one through this quotient map.

use std::fmt;

use crate::graph::{BidirectedGraph, Cycle, CycleError, Edge, EdgeId, NodeId, Sign, Step, Walk};

pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub mate: ArcId,
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkewViolation {
    OddNodeCount,
    NodeMateOutOfRange { node: NodeId },
    FixedNode { node: NodeId },
    NodeMateNotInvolution { node: NodeId },
    NonDenseArcId { position: usize, id: ArcId },
    DanglingArc { arc: ArcId },
    ArcMateOutOfRange { arc: ArcId },
    SelfMateArc { arc: ArcId },
    ArcMateNotInvolution { arc: ArcId },
    BrokenArcSymmetry { arc: ArcId },
    AsymmetricWeight { arc: ArcId },
}

impl SkewViolation {
    /// Weight asymmetry is tolerated by conversions; everything else is not.
    pub fn is_structural(&self) -> bool {
        !matches!(self, SkewViolation::AsymmetricWeight { .. })
    }
}

impl fmt::Display for SkewViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SkewViolation::*;
        match *self {
            OddNodeCount => write!(f, "OddNodeCount: node count must be even"),
            NodeMateOutOfRange { node } => write!(f, "NodeMateOutOfRange: node {}", node + 1),
            FixedNode { node } => write!(f, "FixedNode: node {} is its own mate", node + 1),
            NodeMateNotInvolution { node } => {
                write!(f, "NodeMateNotInvolution: node {}", node + 1)
            }
            NonDenseArcId { position, id } => {
                write!(f, "NonDenseArcId: arc at position {position} has id {id}")
            }
            DanglingArc { arc } => write!(f, "DanglingArc: arc a{arc} references a missing node"),
            ArcMateOutOfRange { arc } => write!(f, "ArcMateOutOfRange: arc a{arc}"),
            SelfMateArc { arc } => write!(f, "SelfMateArc: arc a{arc} is its own mate"),
            ArcMateNotInvolution { arc } => write!(f, "ArcMateNotInvolution: arc a{arc}"),
            BrokenArcSymmetry { arc } => {
                write!(f, "BrokenArcSymmetry: mate of a{arc} does not run between mirrored nodes")
            }
            AsymmetricWeight { arc } => {
                write!(f, "AsymmetricWeight: arc a{arc} and its mate differ in weight")
            }
        }
    }
}

/// Checks every invariant, including weight symmetry.
pub fn validate_skew(
    node_count: usize,
    node_mate: &[NodeId],
    arcs: &[Arc],
) -> Result<(), Vec<SkewViolation>> {
    use SkewViolation::*;
    let mut out = Vec::new();
    if node_count % 2 == 1 {
        out.push(OddNodeCount);
    }
    let nodes_ok = node_mate.len() == node_count;
    if nodes_ok {
        for (v, &m) in node_mate.iter().enumerate() {
            if m >= node_count {
                out.push(NodeMateOutOfRange { node: v });
            } else if m == v {
                out.push(FixedNode { node: v });
            } else if node_mate[m] != v {
                out.push(NodeMateNotInvolution { node: v });
            }
        }
    } else {
        out.push(NodeMateOutOfRange { node: node_mate.len().min(node_count) });
    }
    let mate_of = |v: NodeId| node_mate.get(v).copied().unwrap_or(usize::MAX);
    for (position, a) in arcs.iter().enumerate() {
        if a.id != position {
            out.push(NonDenseArcId { position, id: a.id });
        }
        if a.tail >= node_count || a.head >= node_count {
            out.push(DanglingArc { arc: a.id });
            continue;
        }
        let Some(b) = arcs.get(a.mate) else {
            out.push(ArcMateOutOfRange { arc: a.id });
            continue;
        };
        if a.mate == position {
            out.push(SelfMateArc { arc: a.id });
            continue;
        }
        if b.mate != position {
            out.push(ArcMateNotInvolution { arc: a.id });
            continue;
        }
        if b.tail != mate_of(a.head) || b.head != mate_of(a.tail) {
            out.push(BrokenArcSymmetry { arc: a.id });
        }
        if b.weight != a.weight && position < a.mate {
            out.push(AsymmetricWeight { arc: a.id });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid skew-symmetric graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidSkew(pub Vec<SkewViolation>);

/// A structurally valid skew-symmetric graph. Weights may be asymmetric;
/// see [`SkewSymmetricGraph::asymmetric_arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSymmetricGraph {
    node_mate: Vec<NodeId>,
    arcs: Vec<Arc>,
}

impl SkewSymmetricGraph {
    pub fn new(
        node_count: usize,
        node_mate: Vec<NodeId>,
        arcs: Vec<Arc>,
    ) -> Result<Self, InvalidSkew> {
        if let Err(v) = validate_skew(node_count, &node_mate, &arcs) {
            let structural: Vec<_> = v.into_iter().filter(|x| x.is_structural()).collect();
            if !structural.is_empty() {
                return Err(InvalidSkew(structural));
            }
        }
        Ok(SkewSymmetricGraph { node_mate, arcs })
    }

    /// Node `2k` is paired with `2k + 1`.
    pub fn standard_pairing(node_count: usize) -> Vec<NodeId> {
        (0..node_count).map(|v| v ^ 1).collect()
    }

    pub fn node_count(&self) -> usize {
        self.node_mate.len()
    }

    pub fn node_mate(&self, v: NodeId) -> NodeId {
        self.node_mate[v]
    }

    pub fn node_mates(&self) -> &[NodeId] {
        &self.node_mate
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn asymmetric_arcs(&self) -> Vec<ArcId> {
        self.arcs
            .iter()
            .filter(|a| a.id < a.mate && self.arcs[a.mate].weight != a.weight)
            .map(|a| a.id)
            .collect()
    }
}

/// The chosen representative set `V1`, one node per mate pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    primary: Vec<bool>,
}

impl NodePartition {
    /// `V1` = the smaller node id of each mate pair.
    pub fn canonical(g: &SkewSymmetricGraph) -> Self {
        NodePartition { primary: (0..g.node_count()).map(|v| v < g.node_mate(v)).collect() }
    }

    pub fn from_members(g: &SkewSymmetricGraph, v1: &[NodeId]) -> Option<Self> {
        let mut primary = vec![false; g.node_count()];
        for &v in v1 {
            if v >= primary.len() || primary[v] {
                return None;
            }
            primary[v] = true;
        }
        (0..g.node_count())
            .all(|v| primary[v] != primary[g.node_mate(v)])
            .then_some(NodePartition { primary })
    }

    /// Swaps each listed node's pair between `V1` and `V2`.
    pub fn flipped(&self, g: &SkewSymmetricGraph, nodes: &[NodeId]) -> Self {
        let mut primary = self.primary.clone();
        for &v in nodes {
            let m = g.node_mate(v);
            primary.swap(v, m);
        }
        NodePartition { primary }
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.primary[v]
    }

    pub fn members(&self) -> Vec<NodeId> {
        (0..self.primary.len()).filter(|&v| self.primary[v]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPolicy {
    /// Reject asymmetric arc pairs.
    RequireSymmetric,
    /// Use the weight of the lower-numbered arc of each pair.
    UseLowerArc,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("arc a{arc} and its mate have different weights")]
    AsymmetricWeight { arc: ArcId },
    #[error("arc a{arc} is a directed loop, which has no bidirected counterpart")]
    TransitLoop { arc: ArcId },
    #[error("partition does not hold exactly one node of every mate pair")]
    BadPartition,
}

/// Both directions of the correspondence between one skew-symmetric graph
/// and one bidirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewCorrespondence {
    pub bidirected: BidirectedGraph,
    /// Bidirected node of each skew node.
    pub node_of: Vec<NodeId>,
    /// For each bidirected edge, the arc traversed when leaving slot 0 and
    /// the arc traversed when leaving slot 1.
    pub edge_arcs: Vec<(ArcId, ArcId)>,
    /// The bidirected step of each arc.
    pub arc_step: Vec<Step>,
}

/// Collapses arc mate pairs into bidirected edges relative to `V1`.
pub fn skew_to_bidirected(
    g: &SkewSymmetricGraph,
    p: &NodePartition,
    policy: WeightPolicy,
) -> Result<SkewCorrespondence, ConvertError> {
    let n = g.node_count();
    if p.primary.len() != n || (0..n).any(|v| p.contains(v) == p.contains(g.node_mate(v))) {
        return Err(ConvertError::BadPartition);
    }
    let members = p.members();
    let mut node_of = vec![0; n];
    for (i, &v) in members.iter().enumerate() {
        node_of[v] = i;
        node_of[g.node_mate(v)] = i;
    }
    let mut edges = Vec::new();
    let mut edge_arcs = Vec::new();
    let mut arc_step = vec![Step::new(0, 0); g.arcs().len()];
    for a in g.arcs() {
        if a.id > a.mate {
            continue;
        }
        let b = g.arc(a.mate);
        if a.tail == a.head {
            return Err(ConvertError::TransitLoop { arc: a.id });
        }
        if a.weight != b.weight && policy == WeightPolicy::RequireSymmetric {
            return Err(ConvertError::AsymmetricWeight { arc: a.id });
        }
        let tail_sign = if p.contains(a.tail) { Sign::Out } else { Sign::In };
        let head_sign = if p.contains(a.head) { Sign::In } else { Sign::Out };
        let id = edges.len();
        edges.push(Edge::new(id, node_of[a.tail], node_of[a.head], tail_sign, head_sign, a.weight));
        edge_arcs.push((a.id, b.id));
        arc_step[a.id] = Step::new(id, 0);
        arc_step[b.id] = Step::new(id, 1);
    }
    let bidirected = BidirectedGraph::new(members.len(), edges)
        .expect("collapsed graph satisfies the bidirected invariants");
    Ok(SkewCorrespondence { bidirected, node_of, edge_arcs, arc_step })
}

/// Doubles a bidirected graph: node `v` becomes skew nodes `2v` and its mate
/// `2v + 1`, edge `e` becomes arcs `2e` and `2e + 1`.
pub fn bidirected_to_skew(bg: &BidirectedGraph) -> (SkewSymmetricGraph, SkewCorrespondence) {
    let n = bg.node_count();
    let mut arcs = Vec::with_capacity(2 * bg.edge_count());
    let mut edge_arcs = Vec::with_capacity(bg.edge_count());
    let mut arc_step = Vec::with_capacity(2 * bg.edge_count());
    for e in bg.edges() {
        let [u, v] = e.ends;
        let tail = if e.signs[0] == Sign::Out { 2 * u } else { 2 * u + 1 };
        let head = if e.signs[1] == Sign::In { 2 * v } else { 2 * v + 1 };
        let (a, b) = (2 * e.id, 2 * e.id + 1);
        arcs.push(Arc { id: a, mate: b, tail, head, weight: e.weight });
        arcs.push(Arc { id: b, mate: a, tail: head ^ 1, head: tail ^ 1, weight: e.weight });
        edge_arcs.push((a, b));
        arc_step.push(Step::new(e.id, 0));
        arc_step.push(Step::new(e.id, 1));
    }
    let skew = SkewSymmetricGraph::new(2 * n, SkewSymmetricGraph::standard_pairing(2 * n), arcs)
        .expect("doubled graph is skew-symmetric");
    let node_of = (0..2 * n).map(|x| x / 2).collect();
    (skew, SkewCorrespondence { bidirected: bg.clone(), node_of, edge_arcs, arc_step })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TauError {
    #[error("unknown arc a{0}")]
    UnknownArc(ArcId),
    #[error("arc sequence is not a closed directed walk")]
    NotClosed,
    #[error("cycle repeats an arc or contains an arc together with its mate")]
    NotRegular,
    #[error("cycle repeats an edge")]
    NotEdgeSimple,
    #[error("image is not a cycle: {0}")]
    NotCycle(#[from] CycleError),
}

/// True iff the arcs are distinct and contain no mate pair.
pub fn is_regular(g: &SkewSymmetricGraph, arcs: &[ArcId]) -> bool {
    let mut seen = vec![false; g.arcs().len()];
    for &a in arcs {
        if seen[a] || seen[g.arc(a).mate] {
            return false;
        }
        seen[a] = true;
    }
    true
}

/// Maps a regular directed cycle (given by its arcs in order) to the
/// bidirected cycle it projects onto.
pub fn tau_cycle(
    g: &SkewSymmetricGraph,
    corr: &SkewCorrespondence,
    arcs: &[ArcId],
) -> Result<Cycle, TauError> {
    if let Some(&bad) = arcs.iter().find(|&&a| a >= g.arcs().len()) {
        return Err(TauError::UnknownArc(bad));
    }
    if arcs.is_empty() {
        return Err(TauError::NotClosed);
    }
    for (i, &a) in arcs.iter().enumerate() {
        let next = arcs[(i + 1) % arcs.len()];
        if g.arc(a).head != g.arc(next).tail {
            return Err(TauError::NotClosed);
        }
    }
    if !is_regular(g, arcs) {
        return Err(TauError::NotRegular);
    }
    let walk = Walk {
        start: corr.node_of[g.arc(arcs[0]).tail],
        steps: arcs.iter().map(|&a| corr.arc_step[a]).collect(),
    };
    Ok(Cycle::new(&corr.bidirected, walk)?)
}

/// The unique regular skew cycle projecting onto an edge-simple bidirected
/// cycle.
pub fn tau_inverse_cycle(
    g: &SkewSymmetricGraph,
    corr: &SkewCorrespondence,
    cycle: &Cycle,
) -> Result<Vec<ArcId>, TauError> {
    if !cycle.is_edge_simple() {
        return Err(TauError::NotEdgeSimple);
    }
    let arcs: Vec<ArcId> = cycle
        .steps()
        .iter()
        .map(|s| {
            let (a, b) = corr.edge_arcs[s.edge];
            if s.from == 0 {
                a
            } else {
                b
            }
        })
        .collect();
    for (i, &a) in arcs.iter().enumerate() {
        let next = arcs[(i + 1) % arcs.len()];
        debug_assert_eq!(g.arc(a).head, g.arc(next).tail);
    }
    Ok(arcs)
}

/// Total weight of a sequence of arcs.
pub fn arcs_weight(g: &SkewSymmetricGraph, arcs: &[ArcId]) -> i128 {
    arcs.iter().map(|&a| g.arc(a).weight as i128).sum()
}

/// The mirrored cycle `σ(P)`: mates of the arcs in reverse order.
pub fn mirror(g: &SkewSymmetricGraph, arcs: &[ArcId]) -> Vec<ArcId> {
    arcs.iter().rev().map(|&a| g.arc(a).mate).collect()
}

impl SkewCorrespondence {
    pub fn edge_of_arc(&self, a: ArcId) -> EdgeId {
        self.arc_step[a].edge
    }
}
