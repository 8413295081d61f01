//! Splitting a balanced edge set into pairwise edge-disjoint small cycles.
//!
//! Endpoint slots are paired at every node (entering with leaving), which
//! turns the set into closed trails. Any trail that passes a node three or
//! more times is then split at that node until every piece is small.

use crate::graph::{is_balanced, BidirectedGraph, Cycle, EdgeId, SetError, Sign, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("edge set is not balanced")]
    NotBalanced,
}

/// Partitions the balanced set `x` into small edge-simple cycles.
///
/// Output cycles are in canonical form and sorted by their canonical key.
pub fn decompose_balanced(g: &BidirectedGraph, x: &[EdgeId]) -> Result<Vec<Cycle>, DecomposeError> {
    if !is_balanced(g, x)? {
        return Err(DecomposeError::NotBalanced);
    }
    let mut ids = x.to_vec();
    ids.sort_unstable();

    let mut pending: Vec<Vec<Step>> = closed_trails(g, &ids);
    let mut done = Vec::new();
    while let Some(steps) = pending.pop() {
        match split_once(g, &steps) {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => done.push(Cycle::from_steps(g, steps).canonical(g)),
        }
    }
    done.sort_by_cached_key(|c| c.canonical_key(g));
    Ok(done)
}

/// Pairs the i-th entering slot with the i-th leaving slot at each node and
/// follows the pairing into closed trails.
fn closed_trails(g: &BidirectedGraph, ids: &[EdgeId]) -> Vec<Vec<Step>> {
    let n = g.node_count();
    let mut entering: Vec<Vec<(EdgeId, u8)>> = vec![Vec::new(); n];
    let mut leaving: Vec<Vec<(EdgeId, u8)>> = vec![Vec::new(); n];
    for &id in ids {
        let e = g.edge(id);
        for s in 0..2u8 {
            let list = match e.signs[s as usize] {
                Sign::In => &mut entering[e.ends[s as usize]],
                Sign::Out => &mut leaving[e.ends[s as usize]],
            };
            list.push((id, s));
        }
    }
    // partner[(edge, slot)] = the slot it is paired with at the same node
    let mut partner = std::collections::HashMap::new();
    for v in 0..n {
        for (&a, &b) in entering[v].iter().zip(&leaving[v]) {
            partner.insert(a, b);
            partner.insert(b, a);
        }
    }

    let mut used = std::collections::HashSet::new();
    let mut trails = Vec::new();
    for &id in ids {
        if used.contains(&id) {
            continue;
        }
        let first = Step::new(id, 0);
        let mut steps = Vec::new();
        let mut cur = first;
        loop {
            used.insert(cur.edge);
            steps.push(cur);
            let (edge, slot) = partner[&(cur.edge, 1 - cur.from)];
            let next = Step::new(edge, slot);
            if next == first {
                break;
            }
            cur = next;
        }
        trails.push(steps);
    }
    trails
}

/// Splits a closed trail visiting some node at least three times into two
/// closed trails, or returns `None` when the trail is already small.
fn split_once(g: &BidirectedGraph, steps: &[Step]) -> Option<(Vec<Step>, Vec<Step>)> {
    let mut count = vec![0usize; g.node_count()];
    let mut hot = None;
    for s in steps {
        let v = s.tail(g);
        count[v] += 1;
        if count[v] == 3 {
            hot = Some(v);
            break;
        }
    }
    let v = hot?;

    // Rotate so the trail starts at v with a leaving first edge.
    let mut c: Vec<Step> = rotate_to(g, steps, v);
    if c[0].departure(g) != Sign::Out {
        let rev: Vec<Step> = c.iter().rev().map(|s| s.reversed()).collect();
        c = rotate_to(g, &rev, v);
    }
    debug_assert_eq!(c[0].departure(g), Sign::Out);

    // Positions p (1-based, as v_p) where the trail returns to v.
    let returns: Vec<usize> = (1..c.len()).filter(|&p| c[p].tail(g) == v).take(2).collect();
    let (i, j) = (returns[0], returns[1]);

    // e_p is c[p - 1]; it arrives at v_p.
    for p in [i, j] {
        if c[p - 1].arrival(g) == Sign::In {
            return Some((c[..p].to_vec(), c[p..].to_vec()));
        }
    }
    // Both e_i and e_j leave v: cut out e_{i+1} .. e_j.
    let inner = c[i..j].to_vec();
    let mut outer = c[..i].to_vec();
    outer.extend_from_slice(&c[j..]);
    Some((inner, outer))
}

fn rotate_to(g: &BidirectedGraph, steps: &[Step], v: usize) -> Vec<Step> {
    let at = steps.iter().position(|s| s.tail(g) == v).expect("node on trail");
    let mut out = steps[at..].to_vec();
    out.extend_from_slice(&steps[..at]);
    out
}
