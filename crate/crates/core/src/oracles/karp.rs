use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::rational::{Overflow, Rational};
use crate::reductions::Digraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KarpResult {
    /// `arcs` is a simple directed cycle of mean `mean`, in traversal order.
    Optimal {
        mean: Rational,
        arcs: Vec<usize>,
    },
    NoCycle,
}

impl KarpResult {
    pub fn mean(&self) -> Option<Rational> {
        match self {
            KarpResult::Optimal { mean, .. } => Some(*mean),
            KarpResult::NoCycle => None,
        }
    }
}

/// `a/b < c/d` for positive `b, d`.
fn less(a: i128, b: i128, c: i128, d: i128) -> bool {
    a * d < c * b
}

struct Component {
    /// Arc ids entering each local node.
    into: Vec<Vec<usize>>,
    local: Vec<usize>,
}

/// Minimum mean over one strongly connected component, as
/// `(numerator, denominator, witness arcs)`.
fn component_min(d: &Digraph, c: &Component) -> Option<(i128, i128, Vec<usize>)> {
    let k = c.into.len();
    // table[j][v]: least weight of a j-arc walk from local node 0 to v.
    let mut table: Vec<Vec<Option<i128>>> = vec![vec![None; k]; k + 1];
    let mut pred: Vec<Vec<usize>> = vec![vec![usize::MAX; k]; k + 1];
    table[0][0] = Some(0);
    for j in 1..=k {
        for v in 0..k {
            for &a in &c.into[v] {
                let (t, _, w) = d.arcs[a];
                let Some(base) = table[j - 1][c.local[t]] else {
                    continue;
                };
                let cand = base + w as i128;
                if table[j][v].is_none_or(|cur| cand < cur) {
                    table[j][v] = Some(cand);
                    pred[j][v] = a;
                }
            }
        }
    }
    let mut best: Option<(i128, i128, usize)> = None;
    for v in 0..k {
        let Some(dn) = table[k][v] else { continue };
        let mut worst: Option<(i128, i128)> = None;
        for j in 0..k {
            if let Some(dj) = table[j][v] {
                let (num, den) = (dn - dj, (k - j) as i128);
                if worst.is_none_or(|(p, q)| less(p, q, num, den)) {
                    worst = Some((num, den));
                }
            }
        }
        let (num, den) = worst.expect("some shorter walk reaches every node of a component");
        if best.is_none_or(|(p, q, _)| less(num, den, p, q)) {
            best = Some((num, den, v));
        }
    }
    let (num, den, v) = best?;
    // Walk the k-arc predecessor chain back until a node repeats.
    let mut seen_at = vec![usize::MAX; k];
    let mut at = v;
    let mut chain = Vec::new();
    for j in (0..=k).rev() {
        if seen_at[at] != usize::MAX {
            let from = seen_at[at];
            let mut arcs: Vec<usize> = chain[from..].to_vec();
            arcs.reverse();
            return Some((num, den, arcs));
        }
        seen_at[at] = chain.len();
        let a = pred[j][at];
        chain.push(a);
        at = c.local[d.arcs[a].0];
    }
    unreachable!("a walk of k arcs over k nodes repeats a node")
}

/// Karp's minimum cycle mean on each strongly connected component, with a
/// simple witness cycle.
pub fn karp_min_mean(d: &Digraph) -> Result<KarpResult, Overflow> {
    let mut pg: DiGraph<(), usize> = DiGraph::with_capacity(d.node_count, d.arcs.len());
    for _ in 0..d.node_count {
        pg.add_node(());
    }
    for (id, &(u, v, _)) in d.arcs.iter().enumerate() {
        pg.add_edge(NodeIndex::new(u), NodeIndex::new(v), id);
    }
    let mut comp_of = vec![usize::MAX; d.node_count];
    let mut local = vec![usize::MAX; d.node_count];
    let sccs = tarjan_scc(&pg);
    for (ci, scc) in sccs.iter().enumerate() {
        for (li, n) in scc.iter().enumerate() {
            comp_of[n.index()] = ci;
            local[n.index()] = li;
        }
    }
    let mut comps: Vec<Component> = sccs
        .iter()
        .map(|s| Component { into: vec![Vec::new(); s.len()], local: local.clone() })
        .collect();
    for (id, &(u, v, _)) in d.arcs.iter().enumerate() {
        if comp_of[u] == comp_of[v] {
            comps[comp_of[v]].into[local[v]].push(id);
        }
    }
    let mut best: Option<(i128, i128, Vec<usize>)> = None;
    for c in comps.iter().filter(|c| c.into.iter().any(|v| !v.is_empty())) {
        if let Some((num, den, arcs)) = component_min(d, c) {
            if best.as_ref().is_none_or(|(p, q, _)| less(num, den, *p, *q)) {
                best = Some((num, den, arcs));
            }
        }
    }
    Ok(match best {
        None => KarpResult::NoCycle,
        Some((num, den, arcs)) => {
            let mean = Rational::from_wide(num, den)?;
            let total: i128 = arcs.iter().map(|&a| d.arcs[a].2 as i128).sum();
            debug_assert_eq!(Ok(mean), Rational::from_wide(total, arcs.len() as i128));
            KarpResult::Optimal { mean, arcs }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_triangle() {
        let d = Digraph::new(3, vec![(0, 1, 1), (1, 2, 2), (2, 0, 3)]);
        let r = karp_min_mean(&d).unwrap();
        assert_eq!(r.mean(), Some(Rational::from_int(2)));
        let KarpResult::Optimal { arcs, .. } = r else { panic!() };
        assert_eq!(arcs.len(), 3);
    }

    #[test]
    fn dag_has_no_cycle() {
        let d = Digraph::new(3, vec![(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert_eq!(karp_min_mean(&d).unwrap(), KarpResult::NoCycle);
        assert_eq!(karp_min_mean(&Digraph::new(0, vec![])).unwrap(), KarpResult::NoCycle);
    }

    #[test]
    fn picks_cheaper_component_and_self_loop() {
        let d = Digraph::new(
            5,
            vec![(0, 1, 4), (1, 0, 4), (1, 2, -100), (2, 3, 1), (3, 2, 2), (4, 4, -1)],
        );
        let r = karp_min_mean(&d).unwrap();
        assert_eq!(r, KarpResult::Optimal { mean: Rational::from_int(-1), arcs: vec![5] });
    }

    #[test]
    fn witness_is_consecutive() {
        let d = Digraph::new(
            4,
            vec![(0, 1, 5), (1, 2, -1), (2, 1, -2), (2, 3, 0), (3, 0, 0), (1, 3, 7)],
        );
        let KarpResult::Optimal { mean, arcs } = karp_min_mean(&d).unwrap() else { panic!() };
        assert_eq!(mean, Rational::new(-3, 2).unwrap());
        for i in 0..arcs.len() {
            assert_eq!(d.arcs[arcs[i]].1, d.arcs[arcs[(i + 1) % arcs.len()]].0);
        }
    }
}
