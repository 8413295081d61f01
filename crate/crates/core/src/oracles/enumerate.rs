use std::collections::BTreeMap;

use crate::graph::{BidirectedGraph, CanonKey, Cycle, NodeId, Step};
use crate::rational::{Overflow, Rational};

pub const DEFAULT_MAX_EDGES: usize = 16;

/// Search steps allowed for one enumeration before giving up.
pub const MAX_SEARCH_STEPS: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum BudgetExceeded {
    #[error("instance has {edges} edges, enumeration budget is {budget}")]
    TooManyEdges { edges: usize, budget: usize },
    #[error("enumeration exceeded {0} search steps")]
    SearchTooLong(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("arithmetic overflow")]
    Overflow,
}

impl From<Overflow> for OracleError {
    fn from(_: Overflow) -> Self {
        OracleError::Overflow
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Optimal { mean: Rational, cycle: Cycle },
    NoCycle,
}

impl OracleResult {
    pub fn mean(&self) -> Option<Rational> {
        match self {
            OracleResult::Optimal { mean, .. } => Some(*mean),
            OracleResult::NoCycle => None,
        }
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            OracleResult::Optimal { cycle, .. } => Some(cycle),
            OracleResult::NoCycle => None,
        }
    }
}

struct Search<'a> {
    g: &'a BidirectedGraph,
    /// `(edge, slot)` pairs incident to each node.
    incident: Vec<Vec<Step>>,
    used: Vec<bool>,
    path: Vec<Step>,
    found: BTreeMap<CanonKey, Cycle>,
    steps: u64,
}

impl Search<'_> {
    fn extend(&mut self, first_edge: usize) -> Result<(), BudgetExceeded> {
        self.steps += 1;
        if self.steps > MAX_SEARCH_STEPS {
            return Err(BudgetExceeded::SearchTooLong(MAX_SEARCH_STEPS));
        }
        let last = *self.path.last().expect("path starts nonempty");
        let here: NodeId = last.head(self.g);
        let first = self.path[0];
        if here == first.tail(self.g) && last.arrival(self.g) != first.departure(self.g) {
            let c = Cycle::from_steps(self.g, self.path.clone()).canonical(self.g);
            self.found.entry(c.canonical_key(self.g)).or_insert(c);
        }
        for i in 0..self.incident[here].len() {
            let s = self.incident[here][i];
            if s.edge <= first_edge
                || self.used[s.edge]
                || s.departure(self.g) == last.arrival(self.g)
            {
                continue;
            }
            self.used[s.edge] = true;
            self.path.push(s);
            self.extend(first_edge)?;
            self.path.pop();
            self.used[s.edge] = false;
        }
        Ok(())
    }
}

/// Every edge-simple cycle, one per rotation/reversal class, in canonical
/// form and sorted by canonical key. Fails if `g` has more than `max_edges`
/// edges.
pub fn enumerate_edge_simple_cycles(
    g: &BidirectedGraph,
    max_edges: usize,
) -> Result<Vec<Cycle>, BudgetExceeded> {
    if g.edge_count() > max_edges {
        return Err(BudgetExceeded::TooManyEdges { edges: g.edge_count(), budget: max_edges });
    }
    let mut incident = vec![Vec::new(); g.node_count()];
    for e in g.edges() {
        for slot in 0..2u8 {
            incident[e.ends[slot as usize]].push(Step::new(e.id, slot));
        }
    }
    let mut search = Search {
        g,
        incident,
        used: vec![false; g.edge_count()],
        path: Vec::new(),
        found: BTreeMap::new(),
        steps: 0,
    };
    // Each cycle is found starting from its smallest edge id.
    for e in g.edges() {
        for slot in 0..2u8 {
            search.used[e.id] = true;
            search.path.push(Step::new(e.id, slot));
            search.extend(e.id)?;
            search.path.pop();
            search.used[e.id] = false;
        }
    }
    Ok(search.found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Sign};
    use crate::oracles::brute_force_min_mean;

    fn arcs(n: usize, list: &[(usize, usize, i64)]) -> BidirectedGraph {
        let edges = list.iter().enumerate().map(|(i, &(u, v, w))| Edge::arc(i, u, v, w)).collect();
        BidirectedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn directed_two_cycle() {
        let g = arcs(2, &[(0, 1, 3), (1, 0, 1)]);
        assert_eq!(enumerate_edge_simple_cycles(&g, 16).unwrap().len(), 1);
        let r = brute_force_min_mean(&g, 16).unwrap();
        assert_eq!(r.mean(), Some(Rational::from_int(2)));
    }

    #[test]
    fn single_arc_has_none() {
        let g = arcs(2, &[(0, 1, 3)]);
        assert!(enumerate_edge_simple_cycles(&g, 16).unwrap().is_empty());
        assert_eq!(brute_force_min_mean(&g, 16).unwrap(), OracleResult::NoCycle);
    }

    #[test]
    fn triangle_against_two_cycle() {
        let g = arcs(5, &[(0, 1, 1), (1, 2, 2), (2, 0, 3), (3, 4, 0), (4, 3, 5)]);
        let r = brute_force_min_mean(&g, 16).unwrap();
        assert_eq!(r.mean(), Some(Rational::from_int(2)));
    }

    #[test]
    fn triangle_and_its_reverse() {
        let g = arcs(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (1, 0, 1), (2, 1, 1), (0, 2, 1)]);
        let all = enumerate_edge_simple_cycles(&g, 16).unwrap();
        let by_len = |k| all.iter().filter(|c| c.len() == k).count();
        // two triangles, three 2-cycles, three pairs of 2-cycles through a
        // shared node, three closed trails using all six arcs
        assert_eq!((by_len(2), by_len(3), by_len(4), by_len(6)), (3, 2, 3, 3));
        assert_eq!(all.iter().filter(|c| c.is_node_simple(&g)).count(), 5);
        assert!(all.iter().all(|c| c.is_edge_simple()));
    }

    #[test]
    fn loops_pair_up() {
        let g = BidirectedGraph::new(
            1,
            vec![
                Edge::new(0, 0, 0, Sign::Out, Sign::Out, 0),
                Edge::new(1, 0, 0, Sign::In, Sign::In, 4),
                Edge::new(2, 0, 0, Sign::In, Sign::In, 1),
            ],
        )
        .unwrap();
        let all = enumerate_edge_simple_cycles(&g, 16).unwrap();
        assert_eq!(all.len(), 2);
        let r = brute_force_min_mean(&g, 16).unwrap();
        assert_eq!(r.mean(), Some(Rational::new(1, 2).unwrap()));
    }

    #[test]
    fn budget() {
        let g = arcs(2, &[(0, 1, 3), (1, 0, 1)]);
        assert_eq!(
            enumerate_edge_simple_cycles(&g, 1),
            Err(BudgetExceeded::TooManyEdges { edges: 2, budget: 1 })
        );
    }
}
