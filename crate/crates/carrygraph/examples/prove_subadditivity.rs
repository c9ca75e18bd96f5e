//! Prove the subadditivity of the binary digit sum,
//! `s2(x) + s2(y) >= s2(x + y)`, from its two-state carry graph.
//!
//! ```sh
//! cargo run --example prove_subadditivity
//! ```

use carrygraph::graph::{build_graph, decide, default_max_iter, Limits, ProofOutcome};
use carrygraph::spec::parse_spec;

fn main() {
    let spec = parse_spec("vars x y\nprove s2(x) + s2(y) - s2(x + y) >= 0\n")
        .expect("the spec text is well formed");

    let graph = build_graph(&spec, &Limits::default()).expect("two variables fit any limit");
    println!(
        "carry graph: {} states, {} arcs (root = state {})",
        graph.state_count(),
        graph.arc_count(),
        graph.root()
    );
    for (i, state) in graph.states().iter().enumerate() {
        println!("  state {i}: carries {:?}", state.carries());
    }

    match decide(&spec, &graph, default_max_iter(&graph)).expect("budget is ample") {
        ProofOutcome::Proved { iterations, .. } => {
            println!("proved: the score arrays stabilised after {iterations} iterations");
            println!("no root-to-root walk scores below zero, so the inequality");
            println!("holds for every pair of nonnegative integers");
        }
        ProofOutcome::Refuted { assignment, .. } => {
            unreachable!("subadditivity has no counterexample, yet got {assignment:?}")
        }
    }
}
