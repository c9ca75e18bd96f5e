//! Anatomy of the width-3 carry graph: score every arc *relative to the
//! anchor carry* (its surplus) and inspect the few arcs where the surplus
//! dips below zero.
//!
//! The surplus of an arc `u -> v` is `score + 2*anchor(u) - 2*anchor(v)`;
//! summed around any closed walk the anchor terms telescope away, so walk
//! scores and walk surpluses agree on cycles. Negative arcs are therefore
//! the only obstructions a proof has to absorb, and here they are rare and
//! rigidly placed.
//!
//! ```sh
//! cargo run --release --example surplus_analysis
//! ```

use carrygraph::graph::{
    build_graph, check_negative_structure, check_wbm, classify_arcs, Limits,
};
use carrygraph::spec::build_bm_spec;

fn main() {
    let spec = build_bm_spec(3).expect("3 is odd and small");
    let graph = build_graph(&spec, &Limits::default()).expect("7 variables fit the limits");
    let anchor = spec.anchor().expect("the builder always designates the all-rows sum");

    let classes = classify_arcs(&graph, anchor).expect("anchor is in range");
    println!(
        "{} arcs: negative={} neutral={} positive={}",
        graph.arc_count(),
        classes.negative.len(),
        classes.neutral,
        classes.positive
    );

    println!("negative arcs (all surplus -1, all leaving the same state):");
    for &ai in &classes.negative {
        let arc = &graph.arcs()[ai];
        let input: String = arc.input.iter().map(|d| char::from(b'0' + d)).collect();
        println!("  arc {ai}: state {} -> state {} on input {input}", arc.from, arc.to);
    }

    let negative = check_negative_structure(&graph, anchor).expect("anchor is in range");
    println!(
        "local structure around negative arcs: {}",
        if negative.passes() { "verified" } else { "VIOLATED" }
    );

    let wbm = check_wbm(&graph, &spec).expect("built specs are well shaped");
    println!(
        "anchor dominance w[SumU] >= w[SumW_i] + w[SumB_i] + w[SumM_i] at all {} states: {}",
        graph.state_count(),
        if wbm.holds { "verified" } else { "VIOLATED" }
    );
}
