//! Bidirected graphs, walks and cycles.
//!
//! An edge carries an orientation sign at each of its two endpoint slots: it
//! either enters or leaves the node at that slot. Arcs have one `Out` and one
//! `In` end, the other two edge kinds leave or enter both ends. Loops keep two
//! distinct slots so a walk can record which side it used, and a loop must
//! have equal signs at both slots.
//!
//! Node ids are 0-based in memory; the text formats render them 1-based.

use std::fmt;

use crate::rational::{Overflow, Rational};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    In,
    Out,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::In => Sign::Out,
            Sign::Out => Sign::In,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: [NodeId; 2],
    pub signs: [Sign; 2],
    pub weight: i64,
}

impl Edge {
    pub fn new(id: EdgeId, u: NodeId, v: NodeId, sign_u: Sign, sign_v: Sign, weight: i64) -> Self {
        Edge { id, ends: [u, v], signs: [sign_u, sign_v], weight }
    }

    /// An ordinary arc `tail -> head`.
    pub fn arc(id: EdgeId, tail: NodeId, head: NodeId, weight: i64) -> Self {
        Edge::new(id, tail, head, Sign::Out, Sign::In, weight)
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn entering_count_at(&self, node: NodeId) -> usize {
        (0..2).filter(|&s| self.ends[s] == node && self.signs[s] == Sign::In).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    NoNodes,
    DanglingEndpoint { edge: EdgeId, node: NodeId },
    MixedLoop { edge: EdgeId },
    NonDenseId { position: usize, id: EdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoNodes => write!(f, "NoNodes: node count must be positive"),
            Violation::DanglingEndpoint { edge, node } => {
                write!(f, "DanglingEndpoint: edge e{edge} references node {}", node + 1)
            }
            Violation::MixedLoop { edge } => {
                write!(f, "MixedLoop: loop e{edge} both enters and leaves its node")
            }
            Violation::NonDenseId { position, id } => {
                write!(f, "NonDenseId: edge at position {position} has id {id}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bidirected graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidGraph(pub Vec<Violation>);

/// Checks every structural invariant and returns all violations found.
pub fn validate_bidirected(node_count: usize, edges: &[Edge]) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if node_count == 0 {
        out.push(Violation::NoNodes);
    }
    for (position, e) in edges.iter().enumerate() {
        if e.id != position {
            out.push(Violation::NonDenseId { position, id: e.id });
        }
        for &node in &e.ends {
            if node >= node_count {
                out.push(Violation::DanglingEndpoint { edge: e.id, node });
            }
        }
        if e.is_loop() && e.signs[0] != e.signs[1] {
            out.push(Violation::MixedLoop { edge: e.id });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidirectedGraph {
    node_count: usize,
    edges: Vec<Edge>,
}

impl BidirectedGraph {
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Result<Self, InvalidGraph> {
        validate_bidirected(node_count, &edges).map_err(InvalidGraph)?;
        Ok(BidirectedGraph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.edges.iter().map(|e| e.weight).max()
    }

    /// Same graph with `delta` added to every weight.
    pub fn shifted(&self, delta: i64) -> Result<Self, Overflow> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let weight = e.weight.checked_add(delta).ok_or(Overflow)?;
                Ok(Edge { weight, ..*e })
            })
            .collect::<Result<_, _>>()?;
        Ok(BidirectedGraph { node_count: self.node_count, edges })
    }

    /// Entering and leaving endpoint counts per node over the edge set `x`.
    fn degree_counts(&self, x: &[EdgeId]) -> Result<(Vec<usize>, Vec<usize>), SetError> {
        let mut seen = vec![false; self.edges.len()];
        let mut entering = vec![0; self.node_count];
        let mut leaving = vec![0; self.node_count];
        for &id in x {
            let e = self.edges.get(id).ok_or(SetError::UnknownEdge(id))?;
            if std::mem::replace(&mut seen[id], true) {
                return Err(SetError::DuplicateEdge(id));
            }
            for s in 0..2 {
                match e.signs[s] {
                    Sign::In => entering[e.ends[s]] += 1,
                    Sign::Out => leaving[e.ends[s]] += 1,
                }
            }
        }
        Ok((entering, leaving))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("edge id {0} listed twice")]
    DuplicateEdge(EdgeId),
}

/// True iff every node has as many entering as leaving endpoints in `x`.
pub fn is_balanced(g: &BidirectedGraph, x: &[EdgeId]) -> Result<bool, SetError> {
    let (entering, leaving) = g.degree_counts(x)?;
    Ok(entering == leaving)
}

/// True iff every node has at most two entering endpoints in `x`.
pub fn is_small(g: &BidirectedGraph, x: &[EdgeId]) -> Result<bool, SetError> {
    let (entering, _) = g.degree_counts(x)?;
    Ok(entering.iter().all(|&d| d <= 2))
}

/// Total weight of an edge set, exact.
pub fn set_weight(g: &BidirectedGraph, x: &[EdgeId]) -> i128 {
    x.iter().map(|&e| g.edge(e).weight as i128).sum()
}

/// One traversal of an edge, leaving the endpoint at slot `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: EdgeId,
    pub from: u8,
}

impl Step {
    pub fn new(edge: EdgeId, from: u8) -> Self {
        Step { edge, from }
    }

    fn to(self) -> usize {
        1 - self.from as usize
    }

    pub fn tail(self, g: &BidirectedGraph) -> NodeId {
        g.edge(self.edge).ends[self.from as usize]
    }

    pub fn head(self, g: &BidirectedGraph) -> NodeId {
        g.edge(self.edge).ends[self.to()]
    }

    /// Sign of the edge at the node this step departs from.
    pub fn departure(self, g: &BidirectedGraph) -> Sign {
        g.edge(self.edge).signs[self.from as usize]
    }

    /// Sign of the edge at the node this step arrives at.
    pub fn arrival(self, g: &BidirectedGraph) -> Sign {
        g.edge(self.edge).signs[self.to()]
    }

    pub fn reversed(self) -> Step {
        Step { edge: self.edge, from: 1 - self.from }
    }
}

/// Two consecutive steps meeting at a node form a transit pair there.
pub fn is_transit(g: &BidirectedGraph, arriving: Step, departing: Step) -> bool {
    arriving.arrival(g) != departing.departure(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("step {position} does not start at the current node")]
    NotIncident { position: usize },
    #[error("node and edge sequences have inconsistent lengths")]
    Shape,
}

/// An alternating node/edge sequence. Stored as a start node plus steps so
/// loop traversals keep their slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: NodeId,
    pub steps: Vec<Step>,
}

impl Walk {
    /// Builds a walk from `v_0 .. v_k` and `e_1 .. e_k`, inferring slots.
    pub fn from_sequence(
        g: &BidirectedGraph,
        nodes: &[NodeId],
        edges: &[EdgeId],
    ) -> Result<Walk, WalkError> {
        if nodes.len() != edges.len() + 1 {
            return Err(WalkError::Shape);
        }
        let mut steps = Vec::with_capacity(edges.len());
        for (position, &id) in edges.iter().enumerate() {
            let e = g.edges().get(id).ok_or(WalkError::UnknownEdge(id))?;
            let (a, b) = (nodes[position], nodes[position + 1]);
            let from = if e.ends == [a, b] {
                0
            } else if e.ends == [b, a] {
                1
            } else {
                return Err(WalkError::NotIncident { position });
            };
            steps.push(Step::new(id, from));
        }
        Ok(Walk { start: nodes[0], steps })
    }

    pub fn check(&self, g: &BidirectedGraph) -> Result<(), WalkError> {
        let mut at = self.start;
        for (position, &s) in self.steps.iter().enumerate() {
            if s.edge >= g.edge_count() {
                return Err(WalkError::UnknownEdge(s.edge));
            }
            if s.from > 1 || s.tail(g) != at {
                return Err(WalkError::NotIncident { position });
            }
            at = s.head(g);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn nodes(&self, g: &BidirectedGraph) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        out.extend(self.steps.iter().map(|s| s.head(g)));
        out
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// Interior transit condition only; the walk must be well-formed.
    pub fn is_walk(&self, g: &BidirectedGraph) -> bool {
        self.steps.windows(2).all(|w| is_transit(g, w[0], w[1]))
    }

    pub fn reversed(&self, g: &BidirectedGraph) -> Walk {
        let start = self.steps.last().map_or(self.start, |s| s.head(g));
        Walk { start, steps: self.steps.iter().rev().map(|s| s.reversed()).collect() }
    }
}

/// True iff `w` is a cycle: nonempty, closed, and transit at every node
/// including the wrap-around at `v_0`.
pub fn is_cycle(g: &BidirectedGraph, w: &Walk) -> Result<bool, WalkError> {
    w.check(g)?;
    let (Some(&first), Some(&last)) = (w.steps.first(), w.steps.last()) else {
        return Ok(false);
    };
    Ok(last.head(g) == w.start && w.is_walk(g) && is_transit(g, last, first))
}

/// A walk known to satisfy the cycle conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle(Walk);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error(transparent)]
    Malformed(#[from] WalkError),
    #[error("walk is not a cycle")]
    NotCycle,
}

pub type CanonKey = Vec<(NodeId, EdgeId, u8)>;

impl Cycle {
    pub fn new(g: &BidirectedGraph, walk: Walk) -> Result<Cycle, CycleError> {
        if is_cycle(g, &walk)? {
            Ok(Cycle(walk))
        } else {
            Err(CycleError::NotCycle)
        }
    }

    pub(crate) fn from_steps(g: &BidirectedGraph, steps: Vec<Step>) -> Cycle {
        let start = steps[0].tail(g);
        let walk = Walk { start, steps };
        debug_assert_eq!(is_cycle(g, &walk), Ok(true));
        Cycle(walk)
    }

    pub fn walk(&self) -> &Walk {
        &self.0
    }

    pub fn into_walk(self) -> Walk {
        self.0
    }

    pub fn steps(&self) -> &[Step] {
        &self.0.steps
    }

    pub fn len(&self) -> usize {
        self.0.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn start(&self) -> NodeId {
        self.0.start
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.0.edge_ids()
    }

    /// `v_0 .. v_{k-1}`, without the repeated closing node.
    pub fn visits(&self, g: &BidirectedGraph) -> Vec<NodeId> {
        self.0.steps.iter().map(|s| s.tail(g)).collect()
    }

    pub fn weight(&self, g: &BidirectedGraph) -> i128 {
        self.0.steps.iter().map(|s| g.edge(s.edge).weight as i128).sum()
    }

    pub fn is_edge_simple(&self) -> bool {
        let mut ids = self.edge_ids();
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_node_simple(&self, g: &BidirectedGraph) -> bool {
        let mut v = self.visits(g);
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Every node is visited at most twice.
    pub fn is_small(&self, g: &BidirectedGraph) -> bool {
        let mut count = vec![0u8; g.node_count()];
        self.visits(g).into_iter().all(|v| {
            count[v] += 1;
            count[v] <= 2
        })
    }

    pub fn reversed(&self, g: &BidirectedGraph) -> Cycle {
        Cycle(self.0.reversed(g))
    }

    /// Both slots of a loop describe the same traversal; keys use slot 0.
    fn key_from(g: &BidirectedGraph, steps: &[Step], offset: usize) -> CanonKey {
        (0..steps.len())
            .map(|i| {
                let s = steps[(offset + i) % steps.len()];
                let slot = if g.edge(s.edge).is_loop() { 0 } else { s.from };
                (s.tail(g), s.edge, slot)
            })
            .collect()
    }

    /// The rotation/reversal representative with the lexicographically
    /// smallest `(node, edge, slot)` sequence.
    pub fn canonical(&self, g: &BidirectedGraph) -> Cycle {
        let rev = self.0.reversed(g);
        let mut best: Option<(CanonKey, bool, usize)> = None;
        for (is_rev, steps) in [(false, &self.0.steps), (true, &rev.steps)] {
            for offset in 0..steps.len() {
                let key = Self::key_from(g, steps, offset);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, is_rev, offset));
                }
            }
        }
        let (_, is_rev, offset) = best.expect("cycles are nonempty");
        let steps = if is_rev { &rev.steps } else { &self.0.steps };
        let mut rotated = steps[offset..].to_vec();
        rotated.extend_from_slice(&steps[..offset]);
        for s in &mut rotated {
            if g.edge(s.edge).is_loop() {
                s.from = 0;
            }
        }
        Cycle::from_steps(g, rotated)
    }

    pub fn canonical_key(&self, g: &BidirectedGraph) -> CanonKey {
        let c = self.canonical(g);
        Self::key_from(g, &c.0.steps, 0)
    }

    /// Renders `v_0 e_1 v_1 ... e_k v_0` with 1-based nodes.
    pub fn render(&self, g: &BidirectedGraph) -> String {
        let mut out = format!("{}", self.0.start + 1);
        for s in &self.0.steps {
            out.push_str(&format!(" e{} {}", s.edge, s.head(g) + 1));
        }
        out
    }
}

/// Exact mean weight `w(C) / |C|`.
pub fn cycle_mean(g: &BidirectedGraph, c: &Cycle) -> Result<Rational, Overflow> {
    Rational::from_wide(c.weight(g), c.len() as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle(w0: i64, w1: i64) -> BidirectedGraph {
        BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, w0), Edge::arc(1, 1, 0, w1)]).unwrap()
    }

    #[test]
    fn validate_accepts_single_arc() {
        assert_eq!(validate_bidirected(2, &[Edge::arc(0, 0, 1, 5)]), Ok(()));
    }

    #[test]
    fn validate_rejects_mixed_loop() {
        let e = Edge::new(0, 0, 0, Sign::In, Sign::Out, 1);
        assert_eq!(validate_bidirected(1, &[e]), Err(vec![Violation::MixedLoop { edge: 0 }]));
    }

    #[test]
    fn validate_rejects_dangling_endpoint() {
        let e = Edge::arc(0, 0, 4, 1);
        assert_eq!(
            validate_bidirected(3, &[e]),
            Err(vec![Violation::DanglingEndpoint { edge: 0, node: 4 }])
        );
    }

    #[test]
    fn validate_reports_gaps_and_empty() {
        let errs = validate_bidirected(0, &[Edge::arc(3, 0, 0, 1)]).unwrap_err();
        assert!(errs.contains(&Violation::NoNodes));
        assert!(errs.contains(&Violation::NonDenseId { position: 0, id: 3 }));
        assert!(errs.contains(&Violation::MixedLoop { edge: 3 }));
    }

    #[test]
    fn directed_two_cycle_is_cycle() {
        let g = two_cycle(3, 1);
        let w = Walk::from_sequence(&g, &[0, 1, 0], &[0, 1]).unwrap();
        assert_eq!(is_cycle(&g, &w), Ok(true));
        let c = Cycle::new(&g, w).unwrap();
        assert_eq!(cycle_mean(&g, &c).unwrap(), Rational::from_int(2));
    }

    #[test]
    fn open_walk_is_not_cycle() {
        let g = two_cycle(3, 1);
        let w = Walk::from_sequence(&g, &[0, 1], &[0]).unwrap();
        assert_eq!(is_cycle(&g, &w), Ok(false));
    }

    #[test]
    fn wraparound_transit_violation() {
        // Both edges leave node 1 (index 0): doubly-leaving then arc into 1.
        let g = BidirectedGraph::new(
            2,
            vec![
                Edge::new(0, 0, 1, Sign::Out, Sign::Out, 0),
                Edge::new(1, 1, 0, Sign::In, Sign::Out, 0),
            ],
        )
        .unwrap();
        let w = Walk::from_sequence(&g, &[0, 1, 0], &[0, 1]).unwrap();
        // Interior transit holds at node 2 (Out then In) but not at the wrap.
        assert!(w.is_walk(&g));
        assert_eq!(is_cycle(&g, &w), Ok(false));
    }

    #[test]
    fn malformed_walk_is_an_error() {
        let g = two_cycle(3, 1);
        let w = Walk { start: 1, steps: vec![Step::new(0, 0)] };
        assert_eq!(is_cycle(&g, &w), Err(WalkError::NotIncident { position: 0 }));
        assert_eq!(
            Walk::from_sequence(&g, &[0, 0], &[0]),
            Err(WalkError::NotIncident { position: 0 })
        );
        assert_eq!(Walk::from_sequence(&g, &[0, 1], &[7]), Err(WalkError::UnknownEdge(7)));
    }

    #[test]
    fn balance_examples() {
        let g = two_cycle(3, 1);
        assert_eq!(is_balanced(&g, &[0, 1]), Ok(true));
        assert_eq!(is_small(&g, &[0, 1]), Ok(true));
        assert_eq!(is_balanced(&g, &[0]), Ok(false));
        assert_eq!(is_balanced(&g, &[]), Ok(true));
        assert_eq!(is_balanced(&g, &[0, 9]), Err(SetError::UnknownEdge(9)));
        assert_eq!(is_balanced(&g, &[0, 0]), Err(SetError::DuplicateEdge(0)));

        let loops =
            BidirectedGraph::new(1, vec![Edge::new(0, 0, 0, Sign::In, Sign::In, 0)]).unwrap();
        assert_eq!(is_balanced(&loops, &[0]), Ok(false));
        assert_eq!(is_small(&loops, &[0]), Ok(true));
    }

    #[test]
    fn loop_counts_twice_toward_smallness() {
        // Two doubly-entering loops and two doubly-leaving loops at one node.
        let edges = vec![
            Edge::new(0, 0, 0, Sign::In, Sign::In, 0),
            Edge::new(1, 0, 0, Sign::Out, Sign::Out, 0),
            Edge::new(2, 0, 0, Sign::In, Sign::In, 0),
            Edge::new(3, 0, 0, Sign::Out, Sign::Out, 0),
        ];
        let g = BidirectedGraph::new(1, edges).unwrap();
        assert_eq!(is_balanced(&g, &[0, 1]), Ok(true));
        assert_eq!(is_small(&g, &[0, 1]), Ok(true));
        assert_eq!(is_balanced(&g, &[0, 1, 2, 3]), Ok(true));
        assert_eq!(is_small(&g, &[0, 1, 2, 3]), Ok(false));

        let c = Cycle::new(&g, Walk { start: 0, steps: vec![Step::new(1, 0), Step::new(0, 0)] })
            .unwrap();
        assert_eq!(c.visits(&g), vec![0, 0]);
        assert!(c.is_small(&g));
    }

    #[test]
    fn cycle_means() {
        let g = two_cycle(0, -1);
        let c = Cycle::new(&g, Walk::from_sequence(&g, &[0, 1, 0], &[0, 1]).unwrap()).unwrap();
        assert_eq!(cycle_mean(&g, &c).unwrap(), Rational::new(-1, 2).unwrap());

        let tri = BidirectedGraph::new(
            3,
            vec![Edge::arc(0, 0, 1, 1), Edge::arc(1, 1, 2, 2), Edge::arc(2, 2, 0, 3)],
        )
        .unwrap();
        let c = Cycle::new(&tri, Walk::from_sequence(&tri, &[0, 1, 2, 0], &[0, 1, 2]).unwrap())
            .unwrap();
        assert_eq!(cycle_mean(&tri, &c).unwrap(), Rational::from_int(2));
    }

    #[test]
    fn canonical_form_identifies_rotations_and_reversals() {
        let tri = BidirectedGraph::new(
            3,
            vec![Edge::arc(0, 0, 1, 1), Edge::arc(1, 1, 2, 2), Edge::arc(2, 2, 0, 3)],
        )
        .unwrap();
        let c = Cycle::new(&tri, Walk::from_sequence(&tri, &[1, 2, 0, 1], &[1, 2, 0]).unwrap())
            .unwrap();
        let canon = c.canonical(&tri);
        assert_eq!(canon.start(), 0);
        assert_eq!(canon.edge_ids(), vec![0, 1, 2]);
        assert_eq!(c.reversed(&tri).canonical(&tri), canon);
        assert_eq!(canon.render(&tri), "1 e0 2 e1 3 e2 1");
    }
}
