//! Shortest-walk score arrays: decide an inequality on its carry graph.

use num_bigint::BigUint;

use super::{CarryGraph, GraphError};
use crate::spec::InequalitySpec;

/// Verdict of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofOutcome {
    /// No root-to-root walk scores negative: the inequality holds for every
    /// condition-satisfying assignment. `iterations` is the first index at
    /// which the score arrays repeated.
    Proved { iterations: u64, states: usize, arcs: usize },
    /// An explicit violating assignment. `walk_inputs` is the root-to-root
    /// walk that produced it, one input column per binary digit position,
    /// least significant first; `assignment` assembles those digits per
    /// variable and evaluates to the negative `lhs`.
    Refuted {
        assignment: Vec<BigUint>,
        walk_inputs: Vec<Vec<u8>>,
        lhs: i64,
        iterations: u64,
    },
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved { .. })
    }

    pub fn iterations(&self) -> u64 {
        match self {
            ProofOutcome::Proved { iterations, .. } => *iterations,
            ProofOutcome::Refuted { iterations, .. } => *iterations,
        }
    }
}

/// Iteration budget that any finite run fits in comfortably.
pub fn default_max_iter(graph: &CarryGraph) -> u64 {
    10 * graph.state_count() as u64 + 64
}

/// Decide the inequality on its carry graph.
///
/// Starting from the array that scores the root 0 and everything else
/// unreachable, each iteration relaxes every arc against the *previous*
/// array: `W[v]` becomes the cheapest of its old value and `W_old[u] +
/// score(u -> v)` over all arcs into `v`. The run stops **Proved** at the
/// first iteration `i >= 1` whose array equals the previous one, and
/// **Refuted** as soon as the root's entry drops below zero, in which case
/// the minimising walk is reconstructed from per-iteration predecessor
/// records and re-evaluated as a concrete assignment.
pub fn decide(
    spec: &InequalitySpec,
    graph: &CarryGraph,
    max_iter: u64,
) -> Result<ProofOutcome, GraphError> {
    let n = graph.state_count();
    let root = graph.root();
    let mut w: Vec<Option<i64>> = vec![None; n];
    w[root] = Some(0);
    // pred[i - 1][v] = Some((u, arc)) when iteration i strictly improved v
    // through that arc; None when the value was carried over
    let mut pred: Vec<Vec<Option<(u32, u32)>>> = Vec::new();
    for it in 1..=max_iter {
        let mut w_next = w.clone();
        let mut pred_it: Vec<Option<(u32, u32)>> = vec![None; n];
        for (ai, arc) in graph.arcs().iter().enumerate() {
            if let Some(base) = w[arc.from] {
                let cand = base + arc.score;
                if w_next[arc.to].map_or(true, |cur| cand < cur) {
                    w_next[arc.to] = Some(cand);
                    pred_it[arc.to] = Some((arc.from as u32, ai as u32));
                }
            }
        }
        pred.push(pred_it);
        if w_next[root].map_or(false, |v| v < 0) {
            return Ok(refute(spec, graph, &pred, it));
        }
        if w_next == w {
            return Ok(ProofOutcome::Proved {
                iterations: it,
                states: n,
                arcs: graph.arc_count(),
            });
        }
        w = w_next;
    }
    Err(GraphError::IterationLimit(max_iter))
}

/// Walk the predecessor records back from the root's negative entry and
/// assemble the violating assignment digit by digit.
fn refute(
    spec: &InequalitySpec,
    graph: &CarryGraph,
    pred: &[Vec<Option<(u32, u32)>>],
    iterations: u64,
) -> ProofOutcome {
    let mut arcs_rev: Vec<u32> = Vec::new();
    let mut state = graph.root();
    let mut k = pred.len();
    while k > 0 {
        if let Some((u, arc)) = pred[k - 1][state] {
            arcs_rev.push(arc);
            state = u as usize;
        }
        k -= 1;
    }
    debug_assert_eq!(state, graph.root(), "the walk must start at the root");

    let walk_inputs: Vec<Vec<u8>> = arcs_rev
        .iter()
        .rev()
        .map(|&ai| graph.arcs()[ai as usize].input.clone())
        .collect();
    let score_total: i64 = arcs_rev
        .iter()
        .map(|&ai| graph.arcs()[ai as usize].score)
        .sum();

    let mut assignment = vec![BigUint::from(0u8); spec.var_count()];
    for (position, column) in walk_inputs.iter().enumerate() {
        for (j, &digit) in column.iter().enumerate() {
            if digit == 1 {
                assignment[j].set_bit(position as u64, true);
            }
        }
    }

    let (lhs, conditions_ok) = spec
        .eval_inequality(&assignment)
        .expect("assignment has one value per variable");
    assert!(conditions_ok, "a refutation walk satisfies the side conditions");
    assert_eq!(lhs, score_total, "walk scores sum to the left-hand side");
    assert!(lhs < 0, "the root went negative, so the walk scores below zero");
    ProofOutcome::Refuted { assignment, walk_inputs, lhs, iterations }
}
