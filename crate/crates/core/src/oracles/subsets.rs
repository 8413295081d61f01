//! Minimum mean by exhaustive search over edge subsets.
//!
//! The mean of a cycle depends only on its edge set, and a nonempty edge set
//! is the edge set of one edge-simple cycle exactly when it is balanced and
//! its edges are connected through shared nodes: pairing entering with
//! leaving endpoints at each node gives closed trails, and two trails meeting
//! at a node merge by exchanging their partners there.

use super::enumerate::{BudgetExceeded, OracleError, OracleResult};
use crate::graph::{BidirectedGraph, Cycle, EdgeId, Sign, Step};
use crate::rational::Rational;

/// Largest edge count the subset search accepts, whatever the caller's
/// budget.
pub const MAX_SUBSET_EDGES: usize = 24;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra] = rb;
}

/// Endpoint `2i + slot` of the `i`-th edge of `set`.
fn endpoint(g: &BidirectedGraph, set: &[EdgeId], ep: usize) -> (usize, Sign) {
    let e = g.edge(set[ep / 2]);
    (e.ends[ep % 2], e.signs[ep % 2])
}

/// Checks balance, connectivity and (optionally) that every touched node
/// has exactly two endpoints.
fn qualifies(g: &BidirectedGraph, set: &[EdgeId], node_simple: bool) -> bool {
    let n = g.node_count();
    let mut balance = vec![0i32; n];
    let mut touch = vec![0u32; n];
    let mut parent: Vec<usize> = (0..n).collect();
    for &id in set {
        let e = g.edge(id);
        for s in 0..2 {
            balance[e.ends[s]] += if e.signs[s] == Sign::In { 1 } else { -1 };
            touch[e.ends[s]] += 1;
        }
        union(&mut parent, e.ends[0], e.ends[1]);
    }
    if balance.iter().any(|&b| b != 0) {
        return false;
    }
    if node_simple && touch.iter().any(|&t| t != 0 && t != 2) {
        return false;
    }
    let root = find(&mut parent, g.edge(set[0]).ends[0]);
    (0..n).all(|v| touch[v] == 0 || find(&mut parent, v) == root)
}

/// One closed trail through every edge of a qualifying set.
fn closed_trail(g: &BidirectedGraph, set: &[EdgeId]) -> Cycle {
    let k = 2 * set.len();
    let mut partner = vec![usize::MAX; k];
    let mut pairs_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.node_count()];
    let mut entering: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    let mut leaving: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for ep in 0..k {
        let (v, s) = endpoint(g, set, ep);
        match s {
            Sign::In => entering[v].push(ep),
            Sign::Out => leaving[v].push(ep),
        }
    }
    for v in 0..g.node_count() {
        for (&a, &b) in entering[v].iter().zip(&leaving[v]) {
            partner[a] = b;
            partner[b] = a;
            pairs_at[v].push((a, b));
        }
    }
    loop {
        let mut parent: Vec<usize> = (0..k).collect();
        for ep in 0..k {
            union(&mut parent, ep, ep ^ 1);
            union(&mut parent, ep, partner[ep]);
        }
        let mut merged = false;
        'nodes: for pairs in &mut pairs_at {
            for j in 1..pairs.len() {
                let (a0, b0) = pairs[0];
                let (aj, bj) = pairs[j];
                if find(&mut parent, a0) != find(&mut parent, aj) {
                    partner[a0] = bj;
                    partner[bj] = a0;
                    partner[aj] = b0;
                    partner[b0] = aj;
                    pairs[0] = (a0, bj);
                    pairs[j] = (aj, b0);
                    merged = true;
                    break 'nodes;
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut steps = Vec::with_capacity(set.len());
    let mut depart = 0;
    loop {
        steps.push(Step::new(set[depart / 2], (depart % 2) as u8));
        depart = partner[depart ^ 1];
        if depart == 0 {
            break;
        }
    }
    debug_assert_eq!(steps.len(), set.len());
    Cycle::from_steps(g, steps).canonical(g)
}

fn search(
    g: &BidirectedGraph,
    max_edges: usize,
    node_simple: bool,
) -> Result<OracleResult, OracleError> {
    let m = g.edge_count();
    if m > max_edges.min(MAX_SUBSET_EDGES) {
        return Err(BudgetExceeded::TooManyEdges {
            edges: m,
            budget: max_edges.min(MAX_SUBSET_EDGES),
        }
        .into());
    }
    let mut best: Option<(Rational, usize, Vec<EdgeId>)> = None;
    let mut set = Vec::with_capacity(m);
    for mask in 1u32..(1u32 << m) {
        set.clear();
        set.extend((0..m).filter(|&i| mask & (1 << i) != 0));
        if !qualifies(g, &set, node_simple) {
            continue;
        }
        let total: i128 = set.iter().map(|&e| g.edge(e).weight as i128).sum();
        let mean = Rational::from_wide(total, set.len() as i128)?;
        if best.as_ref().is_none_or(|(bm, bl, _)| (mean, set.len()) < (*bm, *bl)) {
            best = Some((mean, set.len(), set.clone()));
        }
    }
    Ok(match best {
        None => OracleResult::NoCycle,
        Some((mean, _, set)) => OracleResult::Optimal { mean, cycle: closed_trail(g, &set) },
    })
}

/// Exact minimum mean edge-simple cycle. Ties go to fewer edges.
pub fn brute_force_min_mean(
    g: &BidirectedGraph,
    max_edges: usize,
) -> Result<OracleResult, OracleError> {
    search(g, max_edges, false)
}

/// Exact minimum mean node-simple cycle.
pub fn brute_force_min_mean_node_simple(
    g: &BidirectedGraph,
    max_edges: usize,
) -> Result<OracleResult, OracleError> {
    search(g, max_edges, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn witness_uses_every_edge_of_a_figure_eight() {
        let g = BidirectedGraph::new(
            3,
            vec![
                Edge::arc(0, 0, 1, -1),
                Edge::arc(1, 1, 0, -1),
                Edge::arc(2, 0, 2, -1),
                Edge::arc(3, 2, 0, -1),
                Edge::arc(4, 1, 2, 9),
            ],
        )
        .unwrap();
        let r = brute_force_min_mean(&g, 16).unwrap();
        assert_eq!(r.mean(), Some(Rational::from_int(-1)));
        // Ties prefer fewer edges: a 2-cycle, not the figure-eight.
        assert_eq!(r.cycle().unwrap().len(), 2);
        let eight = closed_trail(&g, &[0, 1, 2, 3]);
        assert_eq!(eight.len(), 4);
        assert!(eight.is_edge_simple());
        assert!(!eight.is_node_simple(&g));
    }

    #[test]
    fn node_simple_excludes_repeated_visits() {
        // Only the doubly-leaving loop paired with the doubly-entering loop
        // closes, and it visits its node twice.
        let g = BidirectedGraph::new(
            1,
            vec![
                Edge::new(0, 0, 0, Sign::Out, Sign::Out, 0),
                Edge::new(1, 0, 0, Sign::In, Sign::In, 0),
            ],
        )
        .unwrap();
        assert!(brute_force_min_mean(&g, 16).unwrap().mean().is_some());
        assert_eq!(brute_force_min_mean_node_simple(&g, 16).unwrap(), OracleResult::NoCycle);
    }

    #[test]
    fn budget_is_capped() {
        let edges = (0..30).map(|i| Edge::arc(i, 0, 1, 0)).collect();
        let g = BidirectedGraph::new(2, edges).unwrap();
        assert!(matches!(
            brute_force_min_mean(&g, 100),
            Err(OracleError::Budget(BudgetExceeded::TooManyEdges { .. }))
        ));
    }
}
