//! Count colourings the structural way: group grid rows by *row type*
//! (pattern of White / Black / Mixed column pairs), enumerate the feasible
//! multiplicity vectors, and sum each vector's exactly-factored
//! contribution. The factoring exposes every contribution's 2-adic valuation
//! — the quantity the carry-graph inequality bounds from below.
//!
//! ```sh
//! cargo run --example domino_method
//! ```

use carrygraph::colourings::{
    count_dp, domino_contribution, domino_count, domino_omega, exceptional_vectors,
    MultiplicityVector,
};

fn describe(x: &MultiplicityVector) -> String {
    let parts: Vec<String> =
        x.entries().iter().map(|(t, c)| format!("{t}:{c}")).collect();
    parts.join(" ")
}

fn main() {
    // all multiplicity vectors for width 3, one column-pair target each
    for n in 1..=2u64 {
        let omega = domino_omega(3, n).expect("within guards");
        println!("feasible multiplicity vectors for m = 3, n = {n}: {}", omega.len());
        for x in &omega {
            let (count, valuation) = domino_contribution(3, &x).expect("widths match");
            println!("  [{}]  contributes {count} = 2^{valuation} * odd", describe(x));
        }
    }

    // summed, the contributions reproduce the direct count
    for (m, n) in [(1u64, 4u64), (2, 3), (3, 3)] {
        let by_types = domino_count(m, n).expect("within guards");
        let direct = count_dp(m, n).expect("within guards");
        assert_eq!(by_types, direct);
        println!("domino_count({m}, {n}) = {by_types} = count_dp({m}, {n})");
    }

    // the vectors of minimal valuation: one per way of routing each binary
    // digit of n to one of the three colour-swap pairs, 3^s2(n) in all
    let exceptional = exceptional_vectors(3).expect("within guards");
    println!("\nexceptional vectors for n = 3 ({} of them):", exceptional.len());
    for x in &exceptional {
        let (_, valuation) = domino_contribution(3, &x).expect("widths match");
        println!("  [{}]  valuation {valuation}", describe(x));
    }
}
