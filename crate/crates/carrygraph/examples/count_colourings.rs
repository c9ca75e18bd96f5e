//! Count balanced colourings of a `2n x 2m` grid — `m` white cells per row,
//! `n` per column, the rest black — by four independent methods, and watch
//! them agree.
//!
//! ```sh
//! cargo run --example count_colourings
//! ```

use carrygraph::colourings::{count_bruteforce, count_dp, count_walks3d, domino_count};

fn main() {
    println!("{:>3} {:>3} {:>14} {:>14} {:>14} {:>14}", "m", "n", "dp", "brute", "domino", "walks");
    for m in 1..=3u64 {
        for n in 1..=3u64 {
            let dp = count_dp(m, n).expect("within guards");
            let brute = if 4 * m * n <= 28 {
                count_bruteforce(m, n).expect("within guards").to_string()
            } else {
                "-".into()
            };
            let domino = domino_count(m, n).expect("within guards");
            let walks = if m == 2 {
                count_walks3d(n).expect("within guards").to_string()
            } else {
                "-".into()
            };
            println!("{m:>3} {n:>3} {dp:>14} {brute:>14} {domino:>14} {walks:>14}");
        }
    }

    // the dynamic program scales far beyond the cross-checkers
    let big = count_dp(3, 10).expect("within guards");
    println!("\ncount_dp(3, 10) = {big}");

    // and the walk formula is exactly the width-2 count
    for n in 1..=6u64 {
        assert_eq!(count_dp(2, n).unwrap(), count_walks3d(n).unwrap());
    }
    println!("count_dp(2, n) == count_walks3d(n) for n <= 6: verified");
}
