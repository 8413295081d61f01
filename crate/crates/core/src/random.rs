//! Seedable random instance generators shared by tests, the fuzz command and
//! benchmarks. All functions draw only from the supplied generator.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{BidirectedGraph, Edge, EdgeId, NodeId, Sign};
use crate::matching::UndirectedGraph;
use crate::reductions::Digraph;
use crate::skew::{bidirected_to_skew, Arc, SkewSymmetricGraph};

fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::In
    } else {
        Sign::Out
    }
}

/// `m` edges with uniform endpoints and signs; loops get equal signs.
pub fn random_bidirected<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    w: (i64, i64),
) -> BidirectedGraph {
    assert!(n > 0);
    let edges = (0..m)
        .map(|id| {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let su = sign(rng);
            let sv = if u == v { su } else { sign(rng) };
            Edge::new(id, u, v, su, sv, rng.gen_range(w.0..=w.1))
        })
        .collect();
    BidirectedGraph::new(n, edges).expect("generated edges are valid")
}

/// A Hamiltonian cycle in random order plus `m - n` random non-loop arcs.
pub fn random_strongly_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    w: (i64, i64),
) -> Digraph {
    assert!(n >= 2 && m >= n);
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs: Vec<_> =
        (0..n).map(|i| (order[i], order[(i + 1) % n], rng.gen_range(w.0..=w.1))).collect();
    while arcs.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            arcs.push((u, v, rng.gen_range(w.0..=w.1)));
        }
    }
    arcs.shuffle(rng);
    Digraph::new(n, arcs)
}

/// Uniform random multigraph; loops only if `loops` is set.
pub fn random_undirected<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    w: (i64, i64),
    loops: bool,
) -> UndirectedGraph {
    assert!(n > 0 && (loops || n > 1 || m == 0));
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if loops || u != v {
            edges.push((u, v, rng.gen_range(w.0..=w.1)));
        }
    }
    UndirectedGraph::new(n, edges)
}

/// A random acyclic forest on `n` nodes.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize, w: (i64, i64)) -> UndirectedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.7) {
            edges.push((rng.gen_range(0..v), v, rng.gen_range(w.0..=w.1)));
        }
    }
    UndirectedGraph::new(n, edges)
}

/// A graph containing `cycles` edge-disjoint random cycles (each of length
/// 2 to `max_len`) plus `noise` unrelated edges. Returns the graph and the
/// balanced set formed by the cycle edges.
pub fn random_cycle_union<R: Rng>(
    rng: &mut R,
    n: usize,
    cycles: usize,
    max_len: usize,
    noise: usize,
    w: (i64, i64),
) -> (BidirectedGraph, Vec<EdgeId>) {
    assert!(n > 0 && max_len >= 2);
    let mut edges: Vec<Edge> = Vec::new();
    for _ in 0..cycles {
        let walk = loop {
            let len = rng.gen_range(2..=max_len);
            if let Some(s) = random_closed_walk(rng, n, len) {
                break s;
            }
        };
        for (u, v, su, sv) in walk {
            edges.push(Edge::new(0, u, v, su, sv, rng.gen_range(w.0..=w.1)));
        }
    }
    let set_len = edges.len();
    for _ in 0..noise {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let su = sign(rng);
        let sv = if u == v { su } else { sign(rng) };
        edges.push(Edge::new(0, u, v, su, sv, rng.gen_range(w.0..=w.1)));
    }
    // Shuffle ids so the set is not a prefix.
    let mut ids: Vec<EdgeId> = (0..edges.len()).collect();
    ids.shuffle(rng);
    let mut placed = vec![Edge::new(0, 0, 0, Sign::In, Sign::In, 0); edges.len()];
    for (old, e) in edges.into_iter().enumerate() {
        let id = ids[old];
        placed[id] = Edge { id, ..e };
    }
    let mut set: Vec<EdgeId> = ids[..set_len].to_vec();
    set.sort_unstable();
    (BidirectedGraph::new(n, placed).expect("generated edges are valid"), set)
}

/// Endpoint data of a closed walk of length `len` satisfying transit at
/// every visit, or `None` if the drawn node sequence cannot be signed.
fn random_closed_walk<R: Rng>(
    rng: &mut R,
    n: usize,
    len: usize,
) -> Option<Vec<(NodeId, NodeId, Sign, Sign)>> {
    let nodes: Vec<NodeId> = (0..len).map(|_| rng.gen_range(0..n)).collect();
    // dep[i]: sign with which the walk leaves nodes[i]; it arrives there
    // with the opposite sign.
    let mut dep = vec![sign(rng)];
    for i in 0..len - 1 {
        let next = if nodes[i] == nodes[i + 1] { dep[i].flip() } else { sign(rng) };
        dep.push(next);
    }
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let j = (i + 1) % len;
        let (su, sv) = (dep[i], dep[j].flip());
        if nodes[i] == nodes[j] && su != sv {
            return None;
        }
        out.push((nodes[i], nodes[j], su, sv));
    }
    Some(out)
}

/// A skew-symmetric graph with symmetric weights: the doubling of a random
/// bidirected graph, with nodes and arcs relabeled at random.
pub fn random_skew<R: Rng>(
    rng: &mut R,
    pairs: usize,
    arc_pairs: usize,
    w: (i64, i64),
) -> SkewSymmetricGraph {
    let bg = random_bidirected(rng, pairs, arc_pairs, w);
    let (skew, _) = bidirected_to_skew(&bg);
    relabel_skew(rng, &skew)
}

/// Applies random permutations to node and arc ids.
pub fn relabel_skew<R: Rng>(rng: &mut R, g: &SkewSymmetricGraph) -> SkewSymmetricGraph {
    let n = g.node_count();
    let mut node_perm: Vec<NodeId> = (0..n).collect();
    node_perm.shuffle(rng);
    let mut mates = vec![0; n];
    for v in 0..n {
        mates[node_perm[v]] = node_perm[g.node_mate(v)];
    }
    let mut arc_perm: Vec<usize> = (0..g.arcs().len()).collect();
    arc_perm.shuffle(rng);
    let mut arcs = vec![Arc { id: 0, mate: 0, tail: 0, head: 0, weight: 0 }; g.arcs().len()];
    for a in g.arcs() {
        let id = arc_perm[a.id];
        arcs[id] = Arc {
            id,
            mate: arc_perm[a.mate],
            tail: node_perm[a.tail],
            head: node_perm[a.head],
            weight: a.weight,
        };
    }
    SkewSymmetricGraph::new(n, mates, arcs).expect("relabeling keeps skew symmetry")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_balanced, validate_bidirected};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycle_unions_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (g, x) = random_cycle_union(&mut rng, 5, 3, 6, 4, (-5, 5));
            assert_eq!(validate_bidirected(g.node_count(), g.edges()), Ok(()));
            assert!(is_balanced(&g, &x).unwrap());
        }
    }

    #[test]
    fn strongly_connected_has_no_loops() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let d = random_strongly_connected(&mut rng, 6, 15, (-3, 3));
        assert_eq!(d.arcs.len(), 15);
        assert!(d.arcs.iter().all(|&(u, v, _)| u != v));
    }

    #[test]
    fn relabeled_skew_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let g = random_skew(&mut rng, 4, 7, (-5, 5));
            assert!(g.asymmetric_arcs().is_empty());
        }
    }
}
