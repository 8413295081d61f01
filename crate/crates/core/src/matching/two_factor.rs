//! Minimum weight 2-factors through a perfect matching gadget.
//!
//! Gadget for a multigraph `h` with nodes `x` and edges `e`:
//!
//! * each node `x` becomes two copies `x¹, x²`;
//! * each edge `e = {x, y}` becomes two nodes `e_x, e_y` joined by an inner
//!   edge of weight 0, plus outer edges `{xᵏ, e_x}` of weight `w(e)` and
//!   `{yᵏ, e_y}` of weight 0 for `k = 1, 2`;
//! * a loop at `x` is the same with both sides attached to `x`.
//!
//! An edge of `h` is in the 2-factor exactly when its inner edge is left
//! unmatched, and matching weight equals 2-factor weight.

use super::{min_weight_perfect_matching, MatchingError, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    /// Chosen edge ids of `h`, ascending.
    pub edges: Vec<usize>,
    pub weight: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TwoFactorError {
    #[error("graph has no 2-factor")]
    NoTwoFactor,
    #[error("edge {0} references a node outside the graph")]
    BadEndpoint(usize),
}

/// True iff `edges` (distinct ids of `h`) covers every node exactly twice,
/// counting a loop twice.
pub fn is_two_factor(h: &UndirectedGraph, edges: &[usize]) -> bool {
    let mut deg = vec![0usize; h.node_count];
    let mut seen = vec![false; h.edges.len()];
    for &id in edges {
        let Some(&(u, v, _)) = h.edges.get(id) else {
            return false;
        };
        if std::mem::replace(&mut seen[id], true) {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&d| d == 2)
}

struct Gadget {
    graph: UndirectedGraph,
    /// Matching-graph edge id of the inner edge for each edge of `h`.
    inner: Vec<usize>,
}

fn gadget(h: &UndirectedGraph) -> Gadget {
    let copies = |x: usize, k: usize| 2 * x + k;
    let first_edge_node = 2 * h.node_count;
    let mut edges = Vec::with_capacity(5 * h.edges.len());
    let mut inner = Vec::with_capacity(h.edges.len());
    for (id, &(x, y, w)) in h.edges.iter().enumerate() {
        let (ex, ey) = (first_edge_node + 2 * id, first_edge_node + 2 * id + 1);
        inner.push(edges.len());
        edges.push((ex, ey, 0));
        for k in 0..2 {
            edges.push((copies(x, k), ex, w));
            edges.push((copies(y, k), ey, 0));
        }
    }
    Gadget { graph: UndirectedGraph::new(first_edge_node + 2 * h.edges.len(), edges), inner }
}

/// Minimum weight 2-factor of `h` (loops allowed, counted twice).
pub fn min_weight_two_factor(h: &UndirectedGraph) -> Result<TwoFactor, TwoFactorError> {
    for (id, &(u, v, _)) in h.edges.iter().enumerate() {
        if u >= h.node_count || v >= h.node_count {
            return Err(TwoFactorError::BadEndpoint(id));
        }
    }
    let g = gadget(h);
    let m = match min_weight_perfect_matching(&g.graph) {
        Ok(m) => m,
        Err(MatchingError::NoPerfectMatching) => return Err(TwoFactorError::NoTwoFactor),
        Err(MatchingError::BadEndpoint(_)) => unreachable!("gadget endpoints are in range"),
    };
    let mut matched = vec![false; g.graph.edges.len()];
    for &k in &m.edges {
        matched[k] = true;
    }
    let edges: Vec<usize> = (0..h.edges.len()).filter(|&id| !matched[g.inner[id]]).collect();
    let weight = edges.iter().map(|&id| h.edges[id].2 as i128).sum();
    debug_assert_eq!(weight, m.weight);
    debug_assert!(is_two_factor(h, &edges));
    Ok(TwoFactor { edges, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_unique_two_factor() {
        let h = UndirectedGraph::new(3, vec![(0, 1, 5), (1, 2, -3), (2, 0, 7)]);
        let f = min_weight_two_factor(&h).unwrap();
        assert_eq!(f.edges, vec![0, 1, 2]);
        assert_eq!(f.weight, 9);
    }

    #[test]
    fn loops_count_twice() {
        // Node 0 can take its loop or the double edge to node 1.
        let h = UndirectedGraph::new(2, vec![(0, 0, -1), (1, 1, -1), (0, 1, 3), (0, 1, 3)]);
        let f = min_weight_two_factor(&h).unwrap();
        assert_eq!(f.edges, vec![0, 1]);
        assert_eq!(f.weight, -2);
        assert!(is_two_factor(&h, &[2, 3]));
        assert!(!is_two_factor(&h, &[0, 2]));
    }

    #[test]
    fn path_has_no_two_factor() {
        let h = UndirectedGraph::new(3, vec![(0, 1, 1), (1, 2, 1)]);
        assert_eq!(min_weight_two_factor(&h), Err(TwoFactorError::NoTwoFactor));
    }

    #[test]
    fn checker_rejects_duplicates_and_unknown_ids() {
        let h = UndirectedGraph::new(1, vec![(0, 0, 1)]);
        assert!(is_two_factor(&h, &[0]));
        assert!(!is_two_factor(&h, &[0, 0]));
        assert!(!is_two_factor(&h, &[3]));
    }

    /// Every perfect matching of `g`, as sorted edge id lists.
    fn all_perfect_matchings(g: &UndirectedGraph) -> Vec<Vec<usize>> {
        fn go(
            g: &UndirectedGraph,
            used: &mut [bool],
            chosen: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let Some(v) = used.iter().position(|&u| !u) else {
                let mut m = chosen.clone();
                m.sort_unstable();
                out.push(m);
                return;
            };
            used[v] = true;
            for (id, &(a, b, _)) in g.edges.iter().enumerate() {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if other != v && !used[other] {
                    used[other] = true;
                    chosen.push(id);
                    go(g, used, chosen, out);
                    chosen.pop();
                    used[other] = false;
                }
            }
            used[v] = false;
        }
        let mut out = Vec::new();
        go(g, &mut vec![false; g.node_count], &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn gadget_matchings_are_exactly_two_factors() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(0..=6);
            let edges = (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(-4..=4)))
                .collect();
            let h = UndirectedGraph::new(n, edges);
            let g = gadget(&h);
            let mut induced: Vec<(Vec<usize>, i128)> = all_perfect_matchings(&g.graph)
                .into_iter()
                .map(|pm| {
                    let f = (0..m).filter(|&id| !pm.contains(&g.inner[id])).collect();
                    (f, pm.iter().map(|&k| g.graph.edges[k].2 as i128).sum())
                })
                .collect();
            induced.sort();
            induced.dedup();
            let factors: Vec<(Vec<usize>, i128)> = (0u32..1 << m)
                .map(|mask| (0..m).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
                .filter(|f| is_two_factor(&h, f))
                .map(|f| {
                    let w = f.iter().map(|&i| h.edges[i].2 as i128).sum();
                    (f, w)
                })
                .collect();
            let mut expected = factors.clone();
            expected.sort();
            assert_eq!(induced, expected, "{h:?}");
        }
    }
}
