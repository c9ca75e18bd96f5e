//! Sampling suites shared by the integration tests: each returns `Ok(())`
//! or the first violation, so callers can aggregate or assert as they wish.

use carrygraph::digitsum::s2;
use carrygraph::graph::{build_graph, surplus, CarryGraph, Limits};
use carrygraph::spec::{build_bm_spec, enumerate_types, parse_spec, InequalitySpec};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub const SUBADDITIVITY: &str = "vars x y\nprove s2(x) + s2(y) - s2(x + y) >= 0\n";
pub const FIVE_X: &str = "vars x\nprove 5*s2(5*x) - s2(x) >= 0\n";
pub const CONDITIONAL: &str = "vars a b\nrequire a == b\nprove s2(a + b) - s2(a) >= 0\n";

pub fn spec_of(text: &str) -> InequalitySpec {
    parse_spec(text).expect("fixture spec text is well formed")
}

pub fn graph_of(spec: &InequalitySpec) -> CarryGraph {
    build_graph(spec, &Limits::default()).expect("fixture specs fit the default limits")
}

fn random_value(rng: &mut ChaCha8Rng, max_bits: u64) -> BigUint {
    let bits = rng.gen_range(0..=max_bits);
    let mut value = BigUint::default();
    for position in 0..bits {
        if rng.gen_bool(0.5) {
            value.set_bit(position, true);
        }
    }
    value
}

/// `s2(x) + s2(y) >= s2(x + y)` on random pairs of up-to-128-bit integers.
pub fn subadditivity_fuzz(samples: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for i in 0..samples {
        let x = random_value(&mut rng, 128);
        let y = random_value(&mut rng, 128);
        let lhs = s2(&x) + s2(&y);
        let rhs = s2(&(&x + &y));
        if lhs < rhs {
            return Err(format!(
                "sample {i}: s2(x) + s2(y) = {lhs} < {rhs} = s2(x + y) at x = {x}, y = {y}"
            ));
        }
    }
    Ok(())
}

/// Digit columns of an assignment, least significant first.
fn columns_of(assignment: &[BigUint]) -> Vec<Vec<u8>> {
    let width = assignment.iter().map(|x| x.bits()).max().unwrap_or(0);
    (0..width)
        .map(|j| assignment.iter().map(|x| u8::from(x.bit(j))).collect())
        .collect()
}

/// Replays an assignment's digit columns through the transition function and
/// checks the walk returns to the root with total score equal to the
/// directly evaluated left-hand side.
fn replay_once(
    spec: &InequalitySpec,
    graph: &CarryGraph,
    assignment: &[BigUint],
) -> Result<(), String> {
    let (lhs, ok) = spec
        .eval_inequality(assignment)
        .map_err(|e| format!("evaluation failed: {e}"))?;
    if !ok {
        return Err(format!("sampler produced a condition-violating assignment {assignment:?}"));
    }
    let mut state = graph.states()[graph.root()].clone();
    let mut total: i64 = 0;
    let zeros = vec![0u8; spec.var_count()];
    let columns = columns_of(assignment);
    let mut fed = 0usize;
    let queue: Vec<&[u8]> = columns.iter().map(Vec::as_slice).collect();
    loop {
        let input = if let Some(c) = queue.get(fed) { c } else { &zeros[..] };
        let is_padding = fed >= queue.len();
        if is_padding && state.carries().iter().all(|&c| c == 0) {
            break;
        }
        let step = carrygraph::graph::transition(spec, &state, input)
            .map_err(|e| format!("transition failed: {e}"))?
            .ok_or_else(|| {
                format!("a satisfying assignment was rejected at column {fed}: {assignment:?}")
            })?;
        total += step.score;
        state = step.to;
        fed += 1;
        if fed > columns.len() + 192 {
            return Err(format!("carries failed to flush for {assignment:?}"));
        }
    }
    if state.carries() != graph.states()[graph.root()].carries() {
        return Err(format!("walk did not return to the root for {assignment:?}"));
    }
    if total != lhs {
        return Err(format!(
            "walk score {total} differs from evaluated lhs {lhs} at {assignment:?}"
        ));
    }
    Ok(())
}

/// Round-trip `assignment -> digit walk -> score` on three fixture specs.
pub fn walk_replay(samples_per_spec: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let fixtures = [SUBADDITIVITY, FIVE_X, CONDITIONAL];
    for text in fixtures {
        let spec = spec_of(text);
        let graph = graph_of(&spec);
        for i in 0..samples_per_spec {
            let assignment: Vec<BigUint> = if text == CONDITIONAL {
                let a = random_value(&mut rng, 48);
                vec![a.clone(), a]
            } else {
                (0..spec.var_count()).map(|_| random_value(&mut rng, 48)).collect()
            };
            replay_once(&spec, &graph, &assignment)
                .map_err(|e| format!("spec `{}…`, sample {i}: {e}", &text[..12]))?;
        }
    }
    Ok(())
}

/// On random closed walks of the width-3 graph, the plain score and the
/// anchored surplus agree (the anchor terms telescope away).
pub fn closed_walk_surplus(cycles: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let spec = build_bm_spec(3).expect("3 is odd and small");
    let graph = graph_of(&spec);
    let anchor = spec.anchor().expect("built specs designate an anchor");
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); graph.state_count()];
    for (ai, arc) in graph.arcs().iter().enumerate() {
        outgoing[arc.from].push(ai);
    }
    for c in 0..cycles {
        let start = rng.gen_range(0..graph.state_count());
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut path: Vec<usize> = Vec::new();
        let mut cur = start;
        first_seen.insert(cur, 0);
        let cycle: &[usize] = loop {
            let outs = &outgoing[cur];
            if outs.is_empty() {
                return Err(format!("state {cur} has no outgoing arcs in a pruned graph"));
            }
            let ai = outs[rng.gen_range(0..outs.len())];
            path.push(ai);
            cur = graph.arcs()[ai].to;
            if let Some(&at) = first_seen.get(&cur) {
                break &path[at..];
            }
            first_seen.insert(cur, path.len());
            if path.len() > graph.state_count() + 2 {
                return Err("random walk failed to close".into());
            }
        };
        let score: i64 = cycle.iter().map(|&ai| graph.arcs()[ai].score).sum();
        let surplus_sum: i64 = cycle
            .iter()
            .map(|&ai| surplus(&graph, &graph.arcs()[ai], anchor))
            .sum::<Result<i64, _>>()
            .map_err(|e| format!("surplus failed: {e}"))?;
        if score != surplus_sum {
            return Err(format!(
                "cycle {c}: score {score} != surplus sum {surplus_sum} over arcs {cycle:?}"
            ));
        }
    }
    Ok(())
}

/// Variable indices of the width-`m` spec grouped into colour-swap pairs
/// (`None` partner for self-symmetric types).
fn swap_pairs(m: usize) -> Vec<(usize, Option<usize>)> {
    let types = enumerate_types(m);
    let mut pairs = Vec::new();
    for (i, t) in types.iter().enumerate() {
        let partner = types
            .binary_search(&t.swap_colours())
            .expect("the swap of a row type is a row type");
        match partner.cmp(&i) {
            std::cmp::Ordering::Greater => pairs.push((i, Some(partner))),
            std::cmp::Ordering::Equal => pairs.push((i, None)),
            std::cmp::Ordering::Less => {}
        }
    }
    pairs
}

/// A colour-swap-symmetric assignment: both members of each pair get the
/// same value, so every white/black balance condition holds.
fn symmetric_assignment(
    rng: &mut ChaCha8Rng,
    var_count: usize,
    pairs: &[(usize, Option<usize>)],
    max_bits: u64,
    zero_chance: f64,
) -> Vec<BigUint> {
    let mut assignment = vec![BigUint::default(); var_count];
    for (i, partner) in pairs {
        let value = if rng.gen_bool(zero_chance) {
            BigUint::default()
        } else {
            random_value(rng, max_bits)
        };
        assignment[*i] = value.clone();
        if let Some(j) = partner {
            assignment[*j] = value;
        }
    }
    assignment
}

/// Strictness of the width-5 inequality: any balance-satisfying assignment
/// in which some nonzero value occurs eight or more times evaluates to a
/// strictly positive left-hand side.
pub fn width5_strictness(samples: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let spec = build_bm_spec(5).expect("5 is odd and small");
    let pairs = swap_pairs(5);
    let proper: Vec<usize> =
        (0..pairs.len()).filter(|&k| pairs[k].1.is_some()).collect();
    for i in 0..samples {
        let mut assignment = symmetric_assignment(&mut rng, spec.var_count(), &pairs, 12, 0.5);
        // force one nonzero value onto four full pairs: eight occurrences
        let value = random_value(&mut rng, 20) + BigUint::from(1u32);
        let mut chosen: Vec<usize> = Vec::new();
        while chosen.len() < 4 {
            let k = proper[rng.gen_range(0..proper.len())];
            if !chosen.contains(&k) {
                chosen.push(k);
            }
        }
        for &k in &chosen {
            let (a, b) = (pairs[k].0, pairs[k].1.expect("chosen pairs are proper"));
            assignment[a] = value.clone();
            assignment[b] = value.clone();
        }
        let (lhs, ok) = spec
            .eval_inequality(&assignment)
            .map_err(|e| format!("evaluation failed: {e}"))?;
        if !ok {
            return Err(format!("sample {i}: symmetric assignment violated a condition"));
        }
        if lhs < 1 {
            return Err(format!("sample {i}: lhs = {lhs} < 1 at {assignment:?}"));
        }
    }
    Ok(())
}

/// Soundness of proved verdicts: on specs the engine proves, sampled
/// condition-satisfying assignments never evaluate below zero.
pub fn proved_soundness(samples_per_spec: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);

    let subadd = spec_of(SUBADDITIVITY);
    for i in 0..samples_per_spec {
        let assignment: Vec<BigUint> =
            (0..subadd.var_count()).map(|_| random_value(&mut rng, 96)).collect();
        let (lhs, _) = subadd
            .eval_inequality(&assignment)
            .map_err(|e| format!("evaluation failed: {e}"))?;
        if lhs < 0 {
            return Err(format!("subadditivity sample {i}: lhs = {lhs} at {assignment:?}"));
        }
    }

    let bm3 = build_bm_spec(3).expect("3 is odd and small");
    let pairs = swap_pairs(3);
    for i in 0..samples_per_spec {
        let assignment = symmetric_assignment(&mut rng, bm3.var_count(), &pairs, 24, 0.3);
        let (lhs, ok) = bm3
            .eval_inequality(&assignment)
            .map_err(|e| format!("evaluation failed: {e}"))?;
        if !ok {
            return Err(format!("width-3 sample {i}: symmetric assignment violated a condition"));
        }
        if lhs < 0 {
            return Err(format!("width-3 sample {i}: lhs = {lhs} at {assignment:?}"));
        }
    }
    Ok(())
}

/// Independent refutation oracle: plain iterated relaxation over the arcs
/// (distances from the root), declaring refuted when the root's distance
/// drops below zero or when a further full pass still improves something —
/// in a graph where every state reaches the root, that improvement is a
/// negative cycle feeding a negative root-to-root walk.
pub fn refuted_by_relaxation_oracle(graph: &CarryGraph) -> bool {
    const INF: i64 = i64::MAX / 4;
    let n = graph.state_count();
    let mut dist = vec![INF; n];
    dist[graph.root()] = 0;
    for _ in 0..n {
        let mut changed = false;
        for arc in graph.arcs() {
            if dist[arc.from] < INF && dist[arc.from] + arc.score < dist[arc.to] {
                dist[arc.to] = dist[arc.from] + arc.score;
                changed = true;
            }
        }
        if dist[graph.root()] < 0 {
            return true;
        }
        if !changed {
            return false;
        }
    }
    // still relaxing after n passes: a reachable negative cycle exists
    true
}
