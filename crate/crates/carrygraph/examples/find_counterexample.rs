//! Refute `5*s2(5x) >= s2(x)` and extract the smallest witness the decision
//! loop reaches: a concrete `x` whose digit sums violate the inequality,
//! packaged as a certificate that re-checks with digit-sum arithmetic alone.
//!
//! ```sh
//! cargo run --example find_counterexample
//! ```

use carrygraph::digitsum::s2;
use carrygraph::graph::{
    build_graph, classify_arcs, decide, default_max_iter, Certificate, Limits, ProofOutcome,
};
use carrygraph::spec::parse_spec;
use num_bigint::BigUint;

fn main() {
    let spec = parse_spec("vars x\nprove 5*s2(5*x) - s2(x) >= 0\n").expect("well formed");
    let graph = build_graph(&spec, &Limits::default()).expect("one variable");
    println!("carry graph: {} states, {} arcs", graph.state_count(), graph.arc_count());

    let outcome = decide(&spec, &graph, default_max_iter(&graph)).expect("budget is ample");
    let ProofOutcome::Refuted { ref assignment, ref walk_inputs, lhs, iterations } = outcome
    else {
        unreachable!("this inequality is false")
    };

    let x = &assignment[0];
    println!("refuted after {iterations} iterations: x = {x}");
    println!("  walk length {} digit columns", walk_inputs.len());
    println!(
        "  5*s2(5x) - s2(x) = 5*{} - {} = {lhs}",
        s2(&(BigUint::from(5u32) * x)),
        s2(x)
    );

    // the certificate carries everything a third party needs: re-checking
    // uses only digit-sum evaluation, never the graph
    let negative = classify_arcs(&graph, 0).expect("anchor 0 exists").negative.len() as u64;
    let cert = Certificate::new(&outcome, &graph, Some(negative));
    println!("certificate:\n{}", cert.to_json());
    let ok = cert.recheck_refutation(&spec).expect("certificate is well formed");
    println!("independent re-check of the certificate: {}", if ok { "valid" } else { "INVALID" });
}
