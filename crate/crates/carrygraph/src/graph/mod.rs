//! The carry-graph automaton for digit-sum inequalities.
//!
//! The automaton reads the binary digits of all variables in parallel, least
//! significant position first. A state is the vector of carries held by the
//! spec's linear forms between digit positions; an arc consumes one input
//! column (one 0/1 digit per variable) and emits one output digit per form
//! together with a *score*, the contribution of that digit position to the
//! inequality's left-hand side. Arcs on which the two sides of some condition
//! would emit different digits are never materialized, so every root-to-root
//! walk spells out a condition-satisfying assignment and its total score is
//! the left-hand side there. The inequality holds iff no root-to-root walk
//! scores negative, which [`decide`] settles with shortest-walk score arrays.

mod analysis;
mod certificate;
mod decide;

pub use analysis::{
    check_negative_structure, check_wbm, classify_arcs, surplus, ArcClassification, BmStructure,
    NegativeStructureReport, WbmReport,
};
pub use certificate::Certificate;
pub use decide::{decide, default_max_iter, ProofOutcome};

use std::collections::HashMap;

use thiserror::Error;

use crate::spec::{InequalitySpec, SpecError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("instance too large: {h} variables exceeds the limit of {max} (arc generation scans 2^h inputs per state)")]
    TooManyVariables { h: usize, max: usize },
    #[error("instance too large: the carry state space could hold {bound} states, over the limit of {max}")]
    StateSpaceTooLarge { bound: u128, max: u128 },
    #[error("input column has {got} digits, expected {expected}")]
    InputLength { got: usize, expected: usize },
    #[error("input digits must be 0 or 1, got {0}")]
    InputDigit(u8),
    #[error("carry state has {got} components, expected {expected}")]
    StateLength { got: usize, expected: usize },
    #[error("anchor index {index} is out of range: there are {count} scored forms")]
    AnchorOutOfRange { index: usize, count: usize },
    #[error("score arrays did not settle within {0} iterations; raise the iteration limit")]
    IterationLimit(u64),
    #[error("not a balanced-colouring inequality: {0}")]
    NotBmShaped(String),
    #[error("bad certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// Resource guards for [`build_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of variables; every state fans out over `2^h` inputs.
    pub max_vars: usize,
    /// Maximum admissible product of the forms' coefficient sums, an upper
    /// bound on the number of carry states.
    pub max_states_bound: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vars: 24, max_states_bound: 1 << 22 }
    }
}

/// Input columns are enumerated as bit masks; this caps the mask width no
/// matter what [`Limits::max_vars`] is raised to.
const HARD_MAX_VARS: usize = 30;

/// One carry vector: component `f` holds the carry of the `f`-th form in
/// [`InequalitySpec::all_forms`] order, always below that form's coefficient
/// sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CarryState {
    carries: Vec<u64>,
}

impl CarryState {
    pub fn carries(&self) -> &[u64] {
        &self.carries
    }
}

/// One transition of the pruned carry graph. `from`/`to` index into
/// [`CarryGraph::states`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryArc {
    pub from: usize,
    pub to: usize,
    /// One 0/1 digit per variable, in variable order.
    pub input: Vec<u8>,
    /// One 0/1 output digit per form, in [`InequalitySpec::all_forms`] order.
    pub output: Vec<u8>,
    /// Contribution of this digit column to the left-hand side.
    pub score: i64,
}

/// The pruned carry graph of a spec: every state is reachable from the root
/// and can reach it back, and each ordered state pair carries at most one
/// arc (a minimum-score representative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryGraph {
    states: Vec<CarryState>,
    arcs: Vec<CarryArc>,
    var_count: usize,
    scored_count: usize,
    condition_count: usize,
}

impl CarryGraph {
    /// States in discovery order; the all-zero root is state `0`.
    pub fn states(&self) -> &[CarryState] {
        &self.states
    }

    /// Arcs sorted by `(from, to)`.
    pub fn arcs(&self) -> &[CarryArc] {
        &self.arcs
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn scored_count(&self) -> usize {
        self.scored_count
    }

    pub fn condition_count(&self) -> usize {
        self.condition_count
    }

    pub fn form_count(&self) -> usize {
        self.scored_count + 2 * self.condition_count
    }

    pub fn find_state(&self, carries: &[u64]) -> Option<usize> {
        self.states.iter().position(|s| s.carries == carries)
    }
}

/// Result of applying one input column to a carry state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub to: CarryState,
    pub output: Vec<u8>,
    pub score: i64,
}

/// Apply one input column to a state: each form adds its input digits to its
/// carry, emits the low bit and keeps the rest as the next carry. Returns
/// `Ok(None)` when the two sides of some condition would emit different
/// digits, i.e. when no assignment extends this digit column.
pub fn transition(
    spec: &InequalitySpec,
    state: &CarryState,
    input: &[u8],
) -> Result<Option<Transition>, GraphError> {
    let h = spec.var_count();
    if input.len() != h {
        return Err(GraphError::InputLength { got: input.len(), expected: h });
    }
    if let Some(&d) = input.iter().find(|&&d| d > 1) {
        return Err(GraphError::InputDigit(d));
    }
    let nf = spec.form_count();
    if state.carries.len() != nf {
        return Err(GraphError::StateLength { got: state.carries.len(), expected: nf });
    }
    let mut next = Vec::with_capacity(nf);
    let mut output = Vec::with_capacity(nf);
    for (fi, form) in spec.all_forms().enumerate() {
        let column_sum: u64 = form
            .coeffs()
            .iter()
            .zip(input)
            .map(|(&c, &d)| c * u64::from(d))
            .sum();
        let t = column_sum + state.carries[fi];
        output.push((t & 1) as u8);
        next.push(t >> 1);
    }
    let p = spec.scored_forms().len();
    for j in 0..spec.conditions().len() {
        if output[p + 2 * j] != output[p + 2 * j + 1] {
            return Ok(None);
        }
    }
    let score = spec
        .scored_forms()
        .iter()
        .enumerate()
        .map(|(i, (c, _))| c * i64::from(output[i]))
        .sum();
    Ok(Some(Transition { to: CarryState { carries: next }, output, score }))
}

struct RawArc {
    from: u32,
    to: u32,
    mask: u32,
    score: i64,
}

/// Build the pruned carry graph of a spec: breadth-first generation from the
/// all-zero root over all `2^h` input columns, skipping condition-rejected
/// transitions; then removal of states that cannot reach the root back; then
/// reduction of parallel arcs to one minimum-score representative each, ties
/// broken towards the lexicographically smallest input.
pub fn build_graph(spec: &InequalitySpec, limits: &Limits) -> Result<CarryGraph, GraphError> {
    let h = spec.var_count();
    let max_vars = limits.max_vars.min(HARD_MAX_VARS);
    if h > max_vars {
        return Err(GraphError::TooManyVariables { h, max: max_vars });
    }
    let forms: Vec<&crate::spec::LinearForm> = spec.all_forms().collect();
    let nf = forms.len();
    let mut bound: u128 = 1;
    for f in &forms {
        bound = bound.saturating_mul(u128::from(f.delta()));
    }
    if bound > limits.max_states_bound {
        return Err(GraphError::StateSpaceTooLarge { bound, max: limits.max_states_bound });
    }

    let p = spec.scored_forms().len();
    let q = spec.conditions().len();
    let scores: Vec<i64> = spec.scored_forms().iter().map(|(c, _)| *c).collect();
    let masks: u32 = 1 << h;

    // breadth-first state discovery; state ids are discovery order
    let mut index: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut states: Vec<Vec<u64>> = vec![vec![0; nf]];
    index.insert(states[0].clone(), 0);
    let mut raw: Vec<RawArc> = Vec::new();
    let mut sums = vec![0u64; nf];
    let mut next = vec![0u64; nf];
    let mut head = 0;
    while head < states.len() {
        let from = head as u32;
        'masks: for mask in 0..masks {
            // per-form sum of input digits weighted by coefficients
            sums.iter_mut().for_each(|s| *s = 0);
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (fi, f) in forms.iter().enumerate() {
                    sums[fi] += f.coeffs()[j];
                }
            }
            let mut score = 0i64;
            for fi in 0..nf {
                let t = sums[fi] + states[head][fi];
                next[fi] = t >> 1;
                let out = t & 1;
                if fi < p {
                    score += scores[fi] * out as i64;
                } else if (fi - p) % 2 == 1 && out != (sums[fi - 1] + states[head][fi - 1]) & 1 {
                    continue 'masks;
                }
            }
            let to = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    index.insert(next.clone(), id);
                    states.push(next.clone());
                    id
                }
            };
            raw.push(RawArc { from, to, mask, score });
        }
        head += 1;
    }

    // states from which the root is reachable (reverse breadth-first search)
    let n = states.len();
    let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
    for a in &raw {
        rev[a.to as usize].push(a.from);
    }
    let mut co_reachable = vec![false; n];
    co_reachable[0] = true;
    let mut stack = vec![0u32];
    while let Some(v) = stack.pop() {
        for &u in &rev[v as usize] {
            if !co_reachable[u as usize] {
                co_reachable[u as usize] = true;
                stack.push(u);
            }
        }
    }

    // renumber the surviving states, preserving discovery order
    let mut new_id = vec![u32::MAX; n];
    let mut old_of_new: Vec<usize> = Vec::new();
    for (old, keep) in co_reachable.iter().enumerate() {
        if *keep {
            new_id[old] = old_of_new.len() as u32;
            old_of_new.push(old);
        }
    }

    // one minimum-score arc per ordered state pair; ties towards the
    // lexicographically smallest input column (variable 0 weighs heaviest)
    let lex_key = |mask: u32| mask.reverse_bits() >> (32 - h);
    let mut best: HashMap<(u32, u32), (i64, u32, u32)> = HashMap::new();
    for a in &raw {
        let (fu, tu) = (new_id[a.from as usize], new_id[a.to as usize]);
        if fu == u32::MAX || tu == u32::MAX {
            continue;
        }
        let cand = (a.score, lex_key(a.mask), a.mask);
        best.entry((fu, tu))
            .and_modify(|cur| {
                if (cand.0, cand.1) < (cur.0, cur.1) {
                    *cur = cand;
                }
            })
            .or_insert(cand);
    }
    let mut kept: Vec<(u32, u32, u32, i64)> = best
        .into_iter()
        .map(|((fu, tu), (score, _, mask))| (fu, tu, mask, score))
        .collect();
    kept.sort_unstable_by_key(|&(fu, tu, _, _)| (fu, tu));

    let mut arcs = Vec::with_capacity(kept.len());
    for (fu, tu, mask, score) in kept {
        let from_old = old_of_new[fu as usize];
        let input: Vec<u8> = (0..h).map(|j| ((mask >> j) & 1) as u8).collect();
        let mut output = Vec::with_capacity(nf);
        for (fi, f) in forms.iter().enumerate() {
            let column_sum: u64 = f
                .coeffs()
                .iter()
                .zip(&input)
                .map(|(&c, &d)| c * u64::from(d))
                .sum();
            output.push(((column_sum + states[from_old][fi]) & 1) as u8);
        }
        arcs.push(CarryArc { from: fu as usize, to: tu as usize, input, output, score });
    }

    let states = old_of_new
        .iter()
        .map(|&old| CarryState { carries: states[old].clone() })
        .collect();
    Ok(CarryGraph { states, arcs, var_count: h, scored_count: p, condition_count: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{build_bm_spec, parse_spec};

    fn subadditivity() -> InequalitySpec {
        parse_spec("vars x y\nprove s2(x) + s2(y) - s2(x + y) >= 0").unwrap()
    }

    fn five_x() -> InequalitySpec {
        parse_spec("vars x\nprove 5*s2(5*x) - s2(x) >= 0").unwrap()
    }

    #[test]
    fn transition_subadditivity_examples() {
        let spec = subadditivity();
        let root = CarryState { carries: vec![0, 0, 0] };
        let step = transition(&spec, &root, &[1, 1]).unwrap().unwrap();
        assert_eq!(step.to.carries(), &[0, 0, 1]);
        assert_eq!(step.output, [1, 1, 0]);
        assert_eq!(step.score, 2);
        let stay = transition(&spec, &root, &[0, 0]).unwrap().unwrap();
        assert_eq!(stay.to, root);
        assert_eq!(stay.output, [0, 0, 0]);
        assert_eq!(stay.score, 0);
    }

    #[test]
    fn transition_rejects_condition_violations() {
        let spec = parse_spec("vars a b\nrequire a == b\nprove s2(a + b) >= 0").unwrap();
        let root = CarryState { carries: vec![0, 0, 0] };
        assert_eq!(transition(&spec, &root, &[1, 0]).unwrap(), None);
        assert!(transition(&spec, &root, &[1, 1]).unwrap().is_some());
    }

    #[test]
    fn transition_validates_dimensions() {
        let spec = subadditivity();
        let root = CarryState { carries: vec![0, 0, 0] };
        assert_eq!(
            transition(&spec, &root, &[1]),
            Err(GraphError::InputLength { got: 1, expected: 2 })
        );
        assert_eq!(transition(&spec, &root, &[1, 2]), Err(GraphError::InputDigit(2)));
        let bad = CarryState { carries: vec![0] };
        assert_eq!(
            transition(&spec, &bad, &[1, 1]),
            Err(GraphError::StateLength { got: 1, expected: 3 })
        );
    }

    #[test]
    fn subadditivity_graph_statistics() {
        let graph = build_graph(&subadditivity(), &Limits::default()).unwrap();
        assert_eq!(graph.state_count(), 2);
        assert_eq!(graph.arc_count(), 4);
        // the carry of x + y distinguishes the two states
        assert_eq!(graph.states()[0].carries(), &[0, 0, 0]);
        assert_eq!(graph.states()[1].carries(), &[0, 0, 1]);
    }

    #[test]
    fn five_x_graph_statistics() {
        let graph = build_graph(&five_x(), &Limits::default()).unwrap();
        assert_eq!(graph.state_count(), 5);
        assert_eq!(graph.arc_count(), 10);
    }

    #[test]
    fn bm3_graph_statistics() {
        let spec = build_bm_spec(3).unwrap();
        let graph = build_graph(&spec, &Limits::default()).unwrap();
        assert_eq!(graph.state_count(), 468);
        assert_eq!(graph.arc_count(), 13296);
    }

    #[test]
    fn limits_are_enforced() {
        let spec = subadditivity();
        assert_eq!(
            build_graph(&spec, &Limits { max_vars: 1, max_states_bound: 1 << 22 }),
            Err(GraphError::TooManyVariables { h: 2, max: 1 })
        );
        assert_eq!(
            build_graph(&spec, &Limits { max_vars: 24, max_states_bound: 1 }),
            Err(GraphError::StateSpaceTooLarge { bound: 2, max: 1 })
        );
    }

    #[test]
    fn arcs_are_sorted_and_deduplicated() {
        let spec = build_bm_spec(3).unwrap();
        let graph = build_graph(&spec, &Limits::default()).unwrap();
        let keys: Vec<(usize, usize)> = graph.arcs().iter().map(|a| (a.from, a.to)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(keys, sorted, "arcs must be sorted by (from, to) without parallels");
    }

    #[test]
    fn arc_invariants_hold() {
        for spec in [subadditivity(), five_x()] {
            let graph = build_graph(&spec, &Limits::default()).unwrap();
            for arc in graph.arcs() {
                let step = transition(&spec, &graph.states()[arc.from], &arc.input)
                    .unwrap()
                    .expect("materialized arcs satisfy the conditions");
                assert_eq!(step.to, graph.states()[arc.to]);
                assert_eq!(step.output, arc.output);
                assert_eq!(step.score, arc.score);
            }
        }
    }
}
