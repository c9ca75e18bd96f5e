//! Tabulate the 2-adic valuation of the colouring counts against the
//! predicted value `s2(m) * s2(n)` over a small rectangle.
//!
//! ```sh
//! cargo run --example verify_conjecture
//! ```

use carrygraph::colourings::{verify_conjecture, Verdict};

fn main() {
    println!("m\tn\tcount\tv2\tpredicted\tverdict");
    let mut mismatches = 0usize;
    for cell in verify_conjecture(3, 6) {
        let r = cell.expect("the 3 x 6 rectangle is within every guard");
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.m, r.n, r.count, r.valuation, r.predicted, r.verdict
        );
        if r.verdict == Verdict::Mismatch {
            mismatches += 1;
        }
    }
    match mismatches {
        0 => println!("\nall cells match the predicted valuation"),
        k => println!("\n{k} cells MISMATCH the predicted valuation"),
    }
}
