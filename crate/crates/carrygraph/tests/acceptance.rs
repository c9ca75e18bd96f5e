//! The acceptance gate: nine checks covering the decision engine, the
//! surplus analysis, the exact counters, and the congruence routes. Every
//! check prints one PASS/FAIL line; the test fails afterwards if any check
//! failed, so a red run still shows the full scoreboard.

mod common;

use carrygraph::colourings::{
    count_bruteforce, count_dp, count_fixed, count_walks3d, domino_count, exceptional_vectors,
};
use carrygraph::congruence::check_lemma_ab;
use carrygraph::digitsum::{s2, v2};
use carrygraph::graph::{
    check_negative_structure, check_wbm, classify_arcs, decide, default_max_iter, Certificate,
    ProofOutcome,
};
use carrygraph::spec::build_bm_spec;
use num_bigint::BigUint;
use num_traits::One;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn binom(n: u64, k: u64) -> BigUint {
    assert!(k <= n);
    let k = k.min(n - k);
    let mut b = BigUint::one();
    for i in 1..=k {
        b = b * BigUint::from(n - k + i) / BigUint::from(i);
    }
    b
}

/// Golden statistics of the three reference runs, within ten seconds.
fn c1_golden_statistics() -> Outcome {
    let start = Instant::now();
    let mut problems: Vec<String> = Vec::new();

    let subadd = common::spec_of(common::SUBADDITIVITY);
    let graph = common::graph_of(&subadd);
    match decide(&subadd, &graph, default_max_iter(&graph)) {
        Ok(ProofOutcome::Proved { iterations: 2, states: 2, arcs: 4 }) => {}
        other => problems.push(format!(
            "subadditivity: expected a proof with 2 states and 4 arcs at iteration 2, got {other:?}"
        )),
    }

    let five = common::spec_of(common::FIVE_X);
    let graph = common::graph_of(&five);
    if (graph.state_count(), graph.arc_count()) != (5, 10) {
        problems.push(format!(
            "five-times graph: expected 5 states and 10 arcs, got {} and {}",
            graph.state_count(),
            graph.arc_count()
        ));
    }
    match decide(&five, &graph, default_max_iter(&graph)) {
        Ok(ProofOutcome::Refuted { .. }) => {}
        other => problems.push(format!("five-times: expected a refutation, got {other:?}")),
    }

    let bm3 = build_bm_spec(3).expect("3 is odd and small");
    let graph = common::graph_of(&bm3);
    if (graph.state_count(), graph.arc_count()) != (468, 13296) {
        problems.push(format!(
            "width-3 graph: expected 468 states and 13296 arcs, got {} and {}",
            graph.state_count(),
            graph.arc_count()
        ));
    }
    // Golden constant from the original statistics table. The engine
    // reproducibly stabilises at iteration 5 on this graph, so the
    // exact-match below keeps that discrepancy visible instead of
    // adjusting either side to agree.
    match decide(&bm3, &graph, default_max_iter(&graph)) {
        Ok(ProofOutcome::Proved { iterations: 9, .. }) => {}
        Ok(ProofOutcome::Proved { iterations, .. }) => problems.push(format!(
            "width-3 proof: proved with the expected graph, but the score arrays repeat at \
             iteration {iterations}, not the recorded 9 (the engine lands on {iterations} \
             reproducibly, and a plain relaxation of the same graph confirms the verdict)"
        )),
        other => problems.push(format!("width-3: expected a proof, got {other:?}")),
    }

    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        problems.push(format!("time budget exceeded: {elapsed:.2?} > 10s"));
    }
    if problems.is_empty() {
        Ok(format!(
            "subadditivity 2 states/4 arcs at iteration 2, five-times 5/10 refuted, \
             width-3 468/13296 proved at iteration 9, in {:.2}s",
            elapsed.as_secs_f64()
        ))
    } else {
        Err(problems.join("; "))
    }
}

/// The refutation certificate is negative, self-rechecks, and matches an
/// independent evaluation at the recorded witness.
fn c2_refutation_certificate() -> Outcome {
    let five = common::spec_of(common::FIVE_X);
    let graph = common::graph_of(&five);
    let outcome = decide(&five, &graph, default_max_iter(&graph))
        .map_err(|e| format!("decision failed: {e}"))?;
    let ProofOutcome::Refuted { assignment, lhs, iterations, .. } = &outcome else {
        return Err(format!("expected a refutation, got {outcome:?}"));
    };
    if *lhs >= 0 {
        return Err(format!("refutation certificate carries non-negative lhs {lhs}"));
    }
    let cert = Certificate::new(&outcome, &graph, None);
    match cert.recheck_refutation(&five) {
        Ok(true) => {}
        Ok(false) => return Err("certificate failed its own recheck".into()),
        Err(e) => return Err(format!("certificate recheck errored: {e}")),
    }

    // independent of the engine: the recorded witness evaluates to -1
    let recorded = BigUint::from(838_861u64);
    let (value, ok) = five
        .eval_inequality(std::slice::from_ref(&recorded))
        .map_err(|e| format!("evaluation failed: {e}"))?;
    if !ok || value != -1 {
        return Err(format!(
            "direct evaluation at 838861 gave lhs {value} (conditions {ok}), expected -1"
        ));
    }

    // reproducing the recorded witness and walk length is desirable but not
    // load-bearing: any genuinely negative witness is a valid refutation
    let mut notes = Vec::new();
    if assignment != &[recorded] {
        notes.push(format!(
            ", engine witness {assignment:?} differs from the recorded 838861 but re-evaluates \
             to lhs {lhs}"
        ));
    }
    if *iterations != 23 {
        notes.push(format!(", refutation surfaced at iteration {iterations}, recorded 23"));
    }
    Ok(format!(
        "witness 838861, lhs -1, certificate rechecks{}",
        notes.join("")
    ))
}

/// Surplus structure of the width-3 graph, within ten seconds.
fn c3_surplus_structure() -> Outcome {
    let start = Instant::now();
    let spec = build_bm_spec(3).expect("3 is odd and small");
    let graph = common::graph_of(&spec);
    let anchor = spec.anchor().ok_or("built spec carries no anchor")?;
    let mut problems: Vec<String> = Vec::new();

    let classification =
        classify_arcs(&graph, anchor).map_err(|e| format!("classification failed: {e}"))?;
    if classification.negative.len() != 15 {
        problems.push(format!(
            "expected exactly 15 negative arcs, found {}",
            classification.negative.len()
        ));
    }
    let report = check_negative_structure(&graph, anchor)
        .map_err(|e| format!("structure check failed: {e}"))?;
    if !report.passes() {
        problems.push(format!(
            "negative-arc structure violated: wrong surplus at {:?}, wrong source at {:?}, \
             non-positive predecessor at {:?}",
            report.bad_surplus, report.bad_source, report.bad_predecessor
        ));
    }
    let wbm = check_wbm(&graph, &spec).map_err(|e| format!("dominance check failed: {e}"))?;
    if !wbm.holds {
        problems.push(format!("dominance fails at {:?}", wbm.violation));
    }
    if graph.state_count() != 468 {
        problems.push(format!("expected 468 states, got {}", graph.state_count()));
    }

    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        problems.push(format!("time budget exceeded: {elapsed:.2?} > 10s"));
    }
    if problems.is_empty() {
        Ok(format!(
            "negative={} neutral={} positive={}, every negative arc has surplus -1 from the \
             designated source state, dominance holds at all 468 states, in {:.2}s",
            classification.negative.len(),
            classification.neutral,
            classification.positive,
            elapsed.as_secs_f64()
        ))
    } else {
        Err(problems.join("; "))
    }
}

/// The valuation identity v2(B(m, n)) = s2(m) * s2(n) over the reference
/// window, within sixty seconds.
fn c4_valuation_window() -> Outcome {
    let start = Instant::now();
    let mut cells = 0usize;
    for (m, n_max) in [(1u64, 10u64), (2, 10), (3, 10), (4, 6)] {
        for n in 1..=n_max {
            let count = count_dp(m, n).map_err(|e| format!("count({m}, {n}) failed: {e}"))?;
            let got = v2(&count).map_err(|e| format!("valuation at ({m}, {n}) failed: {e}"))?;
            let want = s2(&BigUint::from(m)) * s2(&BigUint::from(n));
            if got != want {
                return Err(format!(
                    "v2(B({m}, {n})) = {got}, predicted {want} (count {count})"
                ));
            }
            cells += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("time budget exceeded: {elapsed:.2?} > 60s"));
    }
    Ok(format!("{cells} cells match the predicted valuation in {:.2}s", elapsed.as_secs_f64()))
}

/// The four counting routes agree wherever their domains overlap, within
/// sixty seconds.
fn c5_counter_cross_checks() -> Outcome {
    let start = Instant::now();
    let mut brute = 0usize;
    for m in 1..=6u64 {
        for n in 1..=6u64 {
            if 4 * m * n > 24 {
                continue;
            }
            let dp = count_dp(m, n).map_err(|e| format!("count({m}, {n}) failed: {e}"))?;
            let bf = count_bruteforce(m, n)
                .map_err(|e| format!("brute force ({m}, {n}) failed: {e}"))?;
            if dp != bf {
                return Err(format!("({m}, {n}): dp {dp} != brute force {bf}"));
            }
            brute += 1;
        }
    }
    for n in 0..=6u64 {
        let dp = count_dp(2, n).map_err(|e| format!("count(2, {n}) failed: {e}"))?;
        let walks = count_walks3d(n).map_err(|e| format!("walks({n}) failed: {e}"))?;
        if dp != walks {
            return Err(format!("(2, {n}): dp {dp} != three-dimensional walks {walks}"));
        }
    }
    for m in 1..=3u64 {
        for n in 1..=5u64 {
            let dp = count_dp(m, n).map_err(|e| format!("count({m}, {n}) failed: {e}"))?;
            let dom =
                domino_count(m, n).map_err(|e| format!("domino count ({m}, {n}) failed: {e}"))?;
            if dp != dom {
                return Err(format!("({m}, {n}): dp {dp} != domino decomposition {dom}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("time budget exceeded: {elapsed:.2?} > 60s"));
    }
    Ok(format!(
        "{brute} brute-force cells, 7 walk cells and 15 domino cells agree with the column \
         dynamic programme in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

/// Fixed-row and fixed-column counts divide the full count as predicted.
fn c6_fixed_row_identities() -> Outcome {
    for m in 1..=3u64 {
        for n in 1..=3u64 {
            let b = count_dp(m, n).map_err(|e| format!("count({m}, {n}) failed: {e}"))?;
            let top = count_fixed(m, n, true, false)
                .map_err(|e| format!("fixed top row ({m}, {n}) failed: {e}"))?;
            let left = count_fixed(m, n, false, true)
                .map_err(|e| format!("fixed left column ({m}, {n}) failed: {e}"))?;
            let both = count_fixed(m, n, true, true)
                .map_err(|e| format!("fixed both ({m}, {n}) failed: {e}"))?;
            if b != binom(2 * m, m) * &top {
                return Err(format!("({m}, {n}): B != C(2m, m) * fixed-top-row count {top}"));
            }
            if b != binom(2 * n, n) * &left {
                return Err(format!("({m}, {n}): B != C(2n, n) * fixed-left-column count {left}"));
            }
            if BigUint::from(2u32) * &b != binom(2 * m, m) * binom(2 * n, n) * &both {
                return Err(format!("({m}, {n}): 2B != C(2m, m) * C(2n, n) * doubly-fixed {both}"));
            }
            let left_parity = left.bit(0);
            let base_parity = binom(2 * m - 1, m).bit(0);
            if left_parity != base_parity {
                return Err(format!(
                    "({m}, {n}): fixed-left-column count parity {} != C(2m-1, m)^n parity {}",
                    u8::from(left_parity),
                    u8::from(base_parity)
                ));
            }
        }
    }
    Ok("all four identities hold for every width and height up to 3".into())
}

/// The census of minimal-valuation multiplicity vectors has size 3^{s2(n)}.
fn c7_exceptional_census() -> Outcome {
    for n in 0..=8u64 {
        let census =
            exceptional_vectors(n).map_err(|e| format!("census at n = {n} failed: {e}"))?;
        let want = 3usize.pow(s2(&BigUint::from(n)) as u32);
        if census.len() != want {
            return Err(format!("n = {n}: found {} vectors, expected {want}", census.len()));
        }
    }
    Ok("census sizes match 3^(digit sum) for all n up to 8".into())
}

/// Exhaustive block-splitting congruence sweep over the small window.
fn c8_congruence_sweep() -> Outcome {
    let mut checked = 0usize;
    for m in 1..=2u64 {
        for a in 0..=2u32 {
            for b in 0..=3u32 {
                for n_high in 0..=2u64 {
                    for n_low in 0..1u64 << b {
                        let report = check_lemma_ab(m, a, b, n_high, n_low).map_err(|e| {
                            format!(
                                "check at m={m} a={a} b={b} high={n_high} low={n_low} \
                                 errored: {e}"
                            )
                        })?;
                        if !report.holds {
                            return Err(format!(
                                "congruence fails at m={m} a={a} b={b} high={n_high} \
                                 low={n_low}: {} != {} mod {}",
                                report.lhs_residue, report.rhs_residue, report.modulus
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} block splittings hold"))
}

/// The randomised property suites at full scale.
fn c9_property_suites() -> Outcome {
    common::subadditivity_fuzz(100_000)?;
    common::walk_replay(10_000)?;
    common::closed_walk_surplus(1_000)?;
    common::width5_strictness(1_000)?;
    common::proved_soundness(1_000)?;
    Ok("subadditivity 100000, walk replay 3 x 10000, closed walks 1000, width-5 strictness \
        1000, soundness 2 x 1000 - zero violations"
        .into())
}

#[test]
fn acceptance() {
    let checks: [(&str, fn() -> Outcome); 9] = [
        ("golden graph statistics", c1_golden_statistics),
        ("refutation certificate", c2_refutation_certificate),
        ("surplus structure", c3_surplus_structure),
        ("valuation window", c4_valuation_window),
        ("counter cross-checks", c5_counter_cross_checks),
        ("fixed-row identities", c6_fixed_row_identities),
        ("exceptional census", c7_exceptional_census),
        ("congruence sweep", c8_congruence_sweep),
        ("property suites", c9_property_suites),
    ];
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (i, (label, check)) in checks.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("criterion {} ({label}): PASS - {detail}", i + 1),
            Err(detail) => {
                failures.push(i + 1);
                format!("criterion {} ({label}): FAIL - {detail}", i + 1)
            }
        };
        println!("{line}");
        lines.push(line);
    }
    assert!(
        failures.is_empty(),
        "criteria {failures:?} failed:\n{}",
        lines.join("\n")
    );
}
