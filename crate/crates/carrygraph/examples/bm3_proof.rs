//! Build the balanced-colouring inequality for grids of width 6 (`m = 3`)
//! and prove it mechanically on its carry graph.
//!
//! The inequality bounds, from below, the 2-adic valuation of every
//! contribution to the colouring count:
//!
//! ```text
//! sum_T s2(x_T) + sum_i s2(SumM_i) - 3*s2(SumU) >= 0
//! ```
//!
//! over the seven row-type multiplicities `x_T`, subject to the three
//! balance conditions `SumW_i = SumB_i`.
//!
//! ```sh
//! cargo run --release --example bm3_proof
//! ```

use carrygraph::graph::{build_graph, decide, default_max_iter, Limits, ProofOutcome};
use carrygraph::spec::build_bm_spec;

fn main() {
    let spec = build_bm_spec(3).expect("3 is odd and small");
    println!("{}", spec.render());

    let graph = build_graph(&spec, &Limits::default()).expect("7 variables fit the limits");
    println!(
        "carry graph: {} states, {} arcs over {} variables and {} forms",
        graph.state_count(),
        graph.arc_count(),
        graph.var_count(),
        graph.form_count()
    );

    match decide(&spec, &graph, default_max_iter(&graph)).expect("budget is ample") {
        ProofOutcome::Proved { iterations, .. } => {
            println!("proved after {iterations} iterations");
            println!("every balanced colouring of a width-6 grid therefore contributes");
            println!("a multiple of 2^(2*s2(n)) to the count B(3, n)");
        }
        ProofOutcome::Refuted { assignment, .. } => {
            unreachable!("the width-3 inequality is a theorem, yet got {assignment:?}")
        }
    }
}
