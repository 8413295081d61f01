//! Minimum mean edge-simple cycle by iterated shifting.
//!
//! Starting from `a = max w(e)`, each iteration finds a small balanced set
//! `X` minimizing the shifted weight `w(X) - a|X|` (a minimum weight 2-factor
//! of the split graph), sets `b = (w(X) - a|X|) / |X|`, and moves `a` to
//! `a + b`, which is the plain mean of `X`. Once `b = 0`, every small cycle
//! in a decomposition of `X` has mean `a`, and `a` is optimal over all
//! edge-simple cycles. Each non-final iteration strictly shrinks `|X|`, and
//! `|X| <= 2n`, so at most `2n + 1` iterations run.

use crate::decompose::decompose_balanced;
use crate::graph::{BidirectedGraph, Cycle, EdgeId};
use crate::matching::{build_tilde, min_weight_two_factor, phi_inv, TildeGraph};
use crate::rational::{Overflow, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    /// Shift number `a` at the start of the iteration.
    pub shift: Rational,
    /// `|X|` of the chosen set.
    pub size: usize,
    /// `w(X) - a|X|`.
    pub shifted_weight: Rational,
    /// `(w(X) - a|X|) / |X|`, or zero when `X` is empty.
    pub b: Rational,
}

pub type IterationTrace = Vec<IterationRecord>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Optimal { cycle: Cycle, mean: Rational, trace: IterationTrace },
    NoCycle { trace: IterationTrace },
}

impl Solution {
    pub fn mean(&self) -> Option<Rational> {
        match self {
            Solution::Optimal { mean, .. } => Some(*mean),
            Solution::NoCycle { .. } => None,
        }
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            Solution::Optimal { cycle, .. } => Some(cycle),
            Solution::NoCycle { .. } => None,
        }
    }

    pub fn trace(&self) -> &IterationTrace {
        match self {
            Solution::Optimal { trace, .. } | Solution::NoCycle { trace } => trace,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("arithmetic overflow")]
    Overflow,
    /// A broken internal invariant; never caused by user input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<Overflow> for SolveError {
    fn from(_: Overflow) -> Self {
        SolveError::Overflow
    }
}

/// Exact mean weight of a nonempty edge set.
pub fn mean_of_set(g: &BidirectedGraph, x: &[EdgeId]) -> Result<Rational, Overflow> {
    let total: i128 = x.iter().map(|&e| g.edge(e).weight as i128).sum();
    Rational::from_wide(total, x.len() as i128)
}

pub fn shift_add(a: Rational, b: Rational) -> Result<Rational, Overflow> {
    a.checked_add(b)
}

/// `w(e) - a`.
pub fn shifted_weight(weight: i64, a: Rational) -> Result<Rational, Overflow> {
    Rational::from_int(weight).checked_sub(a)
}

/// Integer weights `q·w(e) - p` for `a = p/q`.
fn scaled_shifted_weights(g: &BidirectedGraph, a: Rational) -> Result<Vec<i128>, Overflow> {
    let (p, q) = (a.numer() as i128, a.denom() as i128);
    g.edges()
        .iter()
        .map(|e| q.checked_mul(e.weight as i128).and_then(|x| x.checked_sub(p)).ok_or(Overflow))
        .collect()
}

/// A small balanced set minimizing `w(X) - a|X|`, ties broken toward larger
/// `|X|`, together with that minimum. The empty set is a candidate.
pub fn argmin_small_balanced(
    g: &BidirectedGraph,
    a: Rational,
) -> Result<(Vec<EdgeId>, Rational), SolveError> {
    argmin_with(g, &build_tilde(g), a)
}

fn argmin_with(
    g: &BidirectedGraph,
    tilde: &TildeGraph,
    a: Rational,
) -> Result<(Vec<EdgeId>, Rational), SolveError> {
    let scaled = scaled_shifted_weights(g, a)?;
    // Small balanced sets have at most 2n edges, so scaling by 2n + 2 and
    // subtracting one per edge makes the order lexicographic: first the
    // shifted weight, then larger cardinality.
    let factor = 2 * g.node_count() as i128 + 2;
    let composite = scaled
        .iter()
        .map(|&w| {
            w.checked_mul(factor)
                .and_then(|x| x.checked_sub(1))
                .and_then(|x| i64::try_from(x).ok())
                .ok_or(SolveError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h = tilde.reweighted(&composite);
    let f = min_weight_two_factor(&h)
        .map_err(|e| SolveError::Internal(format!("split graph always has a 2-factor: {e}")))?;
    let x = phi_inv(tilde, &f.edges).map_err(|e| SolveError::Internal(e.to_string()))?;
    let total: i128 = x.iter().map(|&e| scaled[e]).sum();
    let shifted = Rational::from_wide(total, a.denom() as i128)?;
    Ok((x, shifted))
}

/// Finds an edge-simple cycle of minimum mean weight.
///
/// The returned cycle is small, in canonical form, and is the shortest (then
/// canonically smallest) member of the final decomposition.
pub fn solve_min_mean_cycle(g: &BidirectedGraph) -> Result<Solution, SolveError> {
    let mut trace = Vec::new();
    let Some(max_w) = g.max_weight() else {
        return Ok(Solution::NoCycle { trace });
    };
    let tilde = build_tilde(g);
    let limit = 2 * g.node_count() + 1;
    let mut a = Rational::from_int(max_w);
    loop {
        if trace.len() >= limit {
            return Err(SolveError::Internal(format!("more than {limit} iterations")));
        }
        let (x, shifted) = argmin_with(g, &tilde, a)?;
        if x.is_empty() {
            trace.push(IterationRecord {
                shift: a,
                size: 0,
                shifted_weight: shifted,
                b: Rational::ZERO,
            });
            if trace.len() == 1 {
                return Ok(Solution::NoCycle { trace });
            }
            return Err(SolveError::Internal("empty set after the first iteration".into()));
        }
        let b = shifted.checked_div(Rational::from_int(x.len() as i64))?;
        trace.push(IterationRecord { shift: a, size: x.len(), shifted_weight: shifted, b });
        if b > Rational::ZERO {
            return Err(SolveError::Internal(format!("positive step {b}")));
        }
        if b.is_zero() {
            return finish(g, &x, a, trace);
        }
        a = shift_add(a, b)?;
        debug_assert_eq!(Ok(a), mean_of_set(g, &x));
    }
}

fn finish(
    g: &BidirectedGraph,
    x: &[EdgeId],
    a: Rational,
    trace: IterationTrace,
) -> Result<Solution, SolveError> {
    let cycles =
        decompose_balanced(g, x).map_err(|e| SolveError::Internal(format!("final set: {e}")))?;
    let mut best: Option<(usize, crate::graph::CanonKey, Cycle)> = None;
    for c in cycles {
        let mean = crate::graph::cycle_mean(g, &c)?;
        if mean != a {
            return Err(SolveError::Internal(format!("member mean {mean} differs from {a}")));
        }
        let key = (c.len(), c.canonical_key(g));
        if best.as_ref().is_none_or(|(l, k, _)| key < (*l, k.clone())) {
            best = Some((key.0, key.1, c));
        }
    }
    let (_, _, cycle) =
        best.ok_or_else(|| SolveError::Internal("final set decomposed to nothing".into()))?;
    Ok(Solution::Optimal { cycle, mean: a, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Sign};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn solve(n: usize, edges: Vec<Edge>) -> Solution {
        solve_min_mean_cycle(&BidirectedGraph::new(n, edges).unwrap()).unwrap()
    }

    #[test]
    fn directed_two_cycle() {
        let s = solve(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]);
        assert_eq!(s.mean(), Some(r(2, 1)));
        assert_eq!(s.cycle().unwrap().len(), 2);
        assert!(s.trace().len() <= 5);
    }

    #[test]
    fn doubly_leaving_and_entering_pair() {
        let s = solve(
            2,
            vec![
                Edge::new(0, 0, 1, Sign::Out, Sign::Out, 1),
                Edge::new(1, 0, 1, Sign::In, Sign::In, 1),
            ],
        );
        assert_eq!(s.mean(), Some(r(1, 1)));
        assert_eq!(s.cycle().unwrap().len(), 2);
    }

    #[test]
    fn single_arc_has_no_cycle() {
        let s = solve(2, vec![Edge::arc(0, 0, 1, 5)]);
        assert!(matches!(s, Solution::NoCycle { ref trace } if trace.len() == 1));
        let empty = solve(3, vec![]);
        assert!(matches!(empty, Solution::NoCycle { ref trace } if trace.is_empty()));
    }

    #[test]
    fn two_loops_at_one_node() {
        let s = solve(
            1,
            vec![
                Edge::new(0, 0, 0, Sign::Out, Sign::Out, 0),
                Edge::new(1, 0, 0, Sign::In, Sign::In, 4),
            ],
        );
        assert_eq!(s.mean(), Some(r(2, 1)));
        assert_eq!(s.cycle().unwrap().len(), 2);
    }

    #[test]
    fn argmin_examples() {
        let g =
            BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]).unwrap();
        let (x, w) = argmin_small_balanced(&g, r(3, 1)).unwrap();
        assert_eq!(x, vec![0, 1]);
        assert_eq!(w, r(-2, 1));

        let arc = BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3)]).unwrap();
        for a in [r(-10, 1), r(0, 1), r(7, 3)] {
            let (x, w) = argmin_small_balanced(&arc, a).unwrap();
            assert!(x.is_empty());
            assert_eq!(w, Rational::ZERO);
        }
    }

    #[test]
    fn prefers_larger_set_on_ties() {
        // Two disjoint 2-cycles of mean 2: at a = 2 both are zero-weight, the
        // union (4 edges) must win over either alone or the empty set.
        let g = BidirectedGraph::new(
            4,
            vec![
                Edge::arc(0, 0, 1, 3),
                Edge::arc(1, 1, 0, 1),
                Edge::arc(2, 2, 3, 2),
                Edge::arc(3, 3, 2, 2),
            ],
        )
        .unwrap();
        let (x, w) = argmin_small_balanced(&g, r(2, 1)).unwrap();
        assert_eq!(x, vec![0, 1, 2, 3]);
        assert_eq!(w, Rational::ZERO);
    }

    #[test]
    fn set_arithmetic() {
        let g =
            BidirectedGraph::new(2, vec![Edge::arc(0, 0, 1, 3), Edge::arc(1, 1, 0, 1)]).unwrap();
        assert_eq!(mean_of_set(&g, &[0, 1]).unwrap(), r(2, 1));
        assert_eq!(shift_add(r(7, 3), r(-1, 6)).unwrap(), r(13, 6));
        assert_eq!(shifted_weight(3, r(1, 2)).unwrap(), r(5, 2));
    }

    #[test]
    fn huge_weights_report_overflow() {
        let g = BidirectedGraph::new(
            2,
            vec![Edge::arc(0, 0, 1, i64::MAX / 2), Edge::arc(1, 1, 0, i64::MIN / 2)],
        )
        .unwrap();
        assert_eq!(solve_min_mean_cycle(&g), Err(SolveError::Overflow));
    }
}
