use super::enumerate::{BudgetExceeded, OracleError};
use crate::matching::UndirectedGraph;
use crate::rational::Rational;
use crate::reductions::Circuit;

struct Search<'a> {
    u: &'a UndirectedGraph,
    adj: Vec<Vec<(usize, usize)>>,
    on_path: Vec<bool>,
    nodes: Vec<usize>,
    edges: Vec<usize>,
    best: Option<(Rational, Circuit)>,
    overflow: bool,
}

impl Search<'_> {
    fn offer(&mut self) {
        let total: i128 = self.edges.iter().map(|&e| self.u.edges[e].2 as i128).sum();
        let Ok(mean) = Rational::from_wide(total, self.edges.len() as i128) else {
            self.overflow = true;
            return;
        };
        if self.best.as_ref().is_none_or(|(m, _)| mean < *m) {
            let c = Circuit { nodes: self.nodes.clone(), edges: self.edges.clone() };
            self.best = Some((mean, c));
        }
    }

    fn extend(&mut self, start: usize) {
        let here = *self.nodes.last().expect("path starts nonempty");
        for i in 0..self.adj[here].len() {
            let (e, next) = self.adj[here][i];
            if self.edges.contains(&e) {
                continue;
            }
            if next == start {
                self.edges.push(e);
                self.offer();
                self.edges.pop();
            } else if next > start && !self.on_path[next] {
                self.on_path[next] = true;
                self.nodes.push(next);
                self.edges.push(e);
                self.extend(start);
                self.edges.pop();
                self.nodes.pop();
                self.on_path[next] = false;
            }
        }
    }
}

/// Minimum mean circuit (closed trail through distinct nodes, loops and
/// parallel pairs included) of an undirected multigraph, by exhaustive
/// search from each circuit's smallest node.
pub fn brute_force_min_mean_circuit(
    u: &UndirectedGraph,
    max_edges: usize,
) -> Result<Option<(Rational, Circuit)>, OracleError> {
    if u.edges.len() > max_edges {
        return Err(BudgetExceeded::TooManyEdges { edges: u.edges.len(), budget: max_edges }.into());
    }
    let mut adj = vec![Vec::new(); u.node_count];
    for (id, &(a, b, _)) in u.edges.iter().enumerate() {
        adj[a].push((id, b));
        if a != b {
            adj[b].push((id, a));
        }
    }
    let mut search = Search {
        u,
        adj,
        on_path: vec![false; u.node_count],
        nodes: Vec::new(),
        edges: Vec::new(),
        best: None,
        overflow: false,
    };
    for start in 0..u.node_count {
        search.on_path[start] = true;
        search.nodes.push(start);
        search.extend(start);
        search.nodes.pop();
        search.on_path[start] = false;
    }
    if search.overflow {
        return Err(OracleError::Overflow);
    }
    Ok(search.best)
}
