use std::collections::BTreeSet;

use bimean_core::oracles::{
    brute_force_min_mean, brute_force_min_mean_node_simple, enumerate_edge_simple_cycles,
    karp_min_mean, KarpResult,
};
use bimean_core::random::{random_bidirected, random_strongly_connected};
use bimean_core::reductions::{directed_to_bidirected, Digraph};
use bimean_core::{
    cycle_mean, decompose_balanced, is_balanced, is_small, BidirectedGraph, Edge, Rational, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counts cycles by trying every ordered sequence of distinct edges and
/// traversal directions, identifying rotations, reversals, and the two ways
/// of running through a loop.
fn count_by_permutation(g: &BidirectedGraph) -> usize {
    type Seq = Vec<(usize, usize)>;
    fn orbit_min(g: &BidirectedGraph, seq: &Seq) -> Seq {
        let fix = |(e, s): (usize, usize)| if g.edge(e).is_loop() { (e, 0) } else { (e, s) };
        let forward: Seq = seq.iter().map(|&x| fix(x)).collect();
        let backward: Seq = seq.iter().rev().map(|&(e, s)| fix((e, 1 - s))).collect();
        let k = seq.len();
        [forward, backward]
            .iter()
            .flat_map(|v| (0..k).map(move |r| [&v[r..], &v[..r]].concat()))
            .min()
            .unwrap()
    }
    fn extend(g: &BidirectedGraph, seq: &mut Seq, used: &mut [bool], found: &mut BTreeSet<Seq>) {
        let (e0, s0) = seq[0];
        let (el, sl) = *seq.last().unwrap();
        let last = g.edge(el);
        let (head, arrival) = (last.ends[1 - sl], last.signs[1 - sl]);
        let first = g.edge(e0);
        if head == first.ends[s0] && arrival != first.signs[s0] {
            found.insert(orbit_min(g, seq));
        }
        for e in g.edges() {
            for s in 0..2 {
                if !used[e.id] && e.ends[s] == head && e.signs[s] != arrival {
                    used[e.id] = true;
                    seq.push((e.id, s));
                    extend(g, seq, used, found);
                    seq.pop();
                    used[e.id] = false;
                }
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut used = vec![false; g.edge_count()];
    for e in g.edges() {
        for s in 0..2 {
            used[e.id] = true;
            extend(g, &mut vec![(e.id, s)], &mut used, &mut found);
            used[e.id] = false;
        }
    }
    found.len()
}

fn triangle_and_reverse() -> BidirectedGraph {
    let arcs = [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)];
    let edges = arcs.iter().enumerate().map(|(id, &(u, v))| Edge::arc(id, u, v, 1)).collect();
    BidirectedGraph::new(3, edges).unwrap()
}

#[test]
fn triangle_and_reverse_has_eleven_cycles() {
    let g = triangle_and_reverse();
    let cycles = enumerate_edge_simple_cycles(&g, 16).unwrap();
    let independent = count_by_permutation(&g);
    assert_eq!(independent, 11);
    assert_eq!(cycles.len(), 11);
    let node_simple = cycles.iter().filter(|c| c.is_node_simple(&g)).count();
    assert_eq!(node_simple, 5);
}

#[test]
fn enumeration_count_matches_permutation_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let g = random_bidirected(&mut rng, n, m, (0, 0));
        let cycles = enumerate_edge_simple_cycles(&g, 16).unwrap();
        let keys: BTreeSet<_> = cycles.iter().map(|c| c.canonical_key(&g)).collect();
        assert_eq!(keys.len(), cycles.len());
        assert_eq!(count_by_permutation(&g), cycles.len(), "{g:?}");
    }
}

#[test]
fn enumeration_is_complete_for_small_balanced_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=8);
        let g = random_bidirected(&mut rng, n, m, (-3, 3));
        let keys: BTreeSet<_> = enumerate_edge_simple_cycles(&g, 16)
            .unwrap()
            .iter()
            .map(|c| c.canonical_key(&g))
            .collect();
        for mask in 1u32..1 << m {
            let x: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            if !is_balanced(&g, &x).unwrap() || !is_small(&g, &x).unwrap() {
                continue;
            }
            for c in decompose_balanced(&g, &x).unwrap() {
                assert!(keys.contains(&c.canonical_key(&g)), "{x:?} in {g:?}");
            }
        }
    }
}

#[test]
fn subset_search_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=8);
        let g = random_bidirected(&mut rng, n, m, (-5, 5));
        let cycles = enumerate_edge_simple_cycles(&g, 16).unwrap();
        let min = cycles.iter().map(|c| cycle_mean(&g, c).unwrap()).min();
        let min_node_simple = cycles
            .iter()
            .filter(|c| c.is_node_simple(&g))
            .map(|c| cycle_mean(&g, c).unwrap())
            .min();
        let r = brute_force_min_mean(&g, 16).unwrap();
        assert_eq!(r.mean(), min);
        if let Some(c) = r.cycle() {
            assert!(cycles.iter().any(|d| d.canonical_key(&g) == c.canonical_key(&g)));
        }
        let r = brute_force_min_mean_node_simple(&g, 16).unwrap();
        assert_eq!(r.mean(), min_node_simple);
        if let Some(c) = r.cycle() {
            assert!(c.is_node_simple(&g));
        }
    }
}

#[test]
fn karp_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n..=12);
        let d = if rng.gen_bool(0.5) {
            random_strongly_connected(&mut rng, n, m, (-9, 9))
        } else {
            let arcs = (0..m)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(-9..=9)))
                .filter(|&(u, v, _)| u != v)
                .collect();
            Digraph::new(n, arcs)
        };
        let g = directed_to_bidirected(&d).unwrap();
        let karp = karp_min_mean(&d).unwrap();
        assert_eq!(karp.mean(), brute_force_min_mean(&g, 16).unwrap().mean());
        if let KarpResult::Optimal { mean, arcs } = karp {
            let w: i64 = arcs.iter().map(|&a| d.arcs[a].2).sum();
            assert_eq!(Rational::new(w, arcs.len() as i64).unwrap(), mean);
            let mut seen = BTreeSet::new();
            for (i, &a) in arcs.iter().enumerate() {
                assert_eq!(d.arcs[a].1, d.arcs[arcs[(i + 1) % arcs.len()]].0);
                assert!(seen.insert(d.arcs[a].0), "witness repeats a node");
            }
        }
    }
}

#[test]
fn brute_force_examples() {
    let two_cycle =
        BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]).unwrap();
    assert_eq!(brute_force_min_mean(&two_cycle, 16).unwrap().mean(), Some(Rational::from_int(2)));

    let mixed = BidirectedGraph::new(
        3,
        vec![
            Edge::arc(0, 0, 1, 1),
            Edge::arc(1, 1, 2, 2),
            Edge::arc(2, 2, 0, 3),
            Edge::arc(3, 1, 0, 5),
        ],
    )
    .unwrap();
    // The triangle (mean 2) beats the 2-cycle on edges 0 and 3 (mean 5/2).
    let r = brute_force_min_mean(&mixed, 16).unwrap();
    assert_eq!(r.mean(), Some(Rational::from_int(2)));
    assert_eq!(r.cycle().unwrap().len(), 3);

    let leaving_pair = BidirectedGraph::new(
        1,
        vec![
            Edge::new(0, 0, 0, Sign::Out, Sign::Out, 0),
            Edge::new(1, 0, 0, Sign::In, Sign::In, 4),
        ],
    )
    .unwrap();
    assert_eq!(
        brute_force_min_mean(&leaving_pair, 16).unwrap().mean(),
        Some(Rational::from_int(2))
    );
}
