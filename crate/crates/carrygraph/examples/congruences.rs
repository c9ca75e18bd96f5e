//! The low-order bits of the colouring counts: recompute them through
//! constant terms of Laurent-polynomial powers, then check two families of
//! congruences that follow from iterated squaring modulo powers of two.
//!
//! ```sh
//! cargo run --example congruences
//! ```

use carrygraph::colourings::count_dp;
use carrygraph::congruence::{
    check_lemma_ab, check_sparse_factorisation, constant_term_power, is_k_sparse, LaurentPoly,
};
use num_bigint::BigUint;

fn main() {
    // the step polynomial of a width-2 grid: six balanced ±1 monomials
    let steps = LaurentPoly::balanced_steps(2, 16);
    println!("step polynomial on 4 variables: {} terms", steps.term_count());

    // its (2n)-th power's constant term is the count, reduced mod 2^16
    for n in 0..=4u64 {
        let residue = constant_term_power(2, n, 16).expect("within guards");
        let exact = count_dp(2, n).expect("within guards");
        println!(
            "  constant term of steps^{} = {residue:>5}  (exact count {exact} ≡ {} mod 2^16)",
            2 * n,
            &exact % BigUint::from(1u64 << 16),
        );
        assert_eq!(BigUint::from(residue), &exact % BigUint::from(1u64 << 16));
    }

    // splitting the column target across a zero gap factors the count
    println!("\nblock-splitting congruence, modulo 2^(a+2):");
    for (m, a, b, n_high, n_low) in [(1u64, 0u32, 1u32, 1u64, 1u64), (2, 0, 1, 1, 0), (2, 1, 2, 2, 3)] {
        let r = check_lemma_ab(m, a, b, n_high, n_low).expect("within guards");
        println!(
            "  B({m}, {}) ≡ {} and the split product ≡ {}  (mod {}): {}",
            r.n,
            r.lhs_residue,
            r.rhs_residue,
            r.modulus,
            if r.holds { "agree" } else { "DISAGREE" }
        );
    }

    // counts factor along sparse binary patterns of n, with the product's
    // valuation pinned exactly
    println!("\nsparse-pattern factorisation, modulo 2^(k+1):");
    for (m, exponents) in [(1u64, vec![3u64, 0]), (2, vec![4, 0]), (1, vec![8, 4, 0])] {
        let n: u64 = exponents.iter().map(|&e| 1u64 << e).sum();
        let k = exponents.len() as u64 * u64::from(m.count_ones());
        println!("  n = {n} ({n:#b}) is {k}-sparse: {}", is_k_sparse(n, k));
        let r = check_sparse_factorisation(m, &exponents).expect("pattern is sparse enough");
        println!(
            "    B({m}, {n}) ≡ {}, factor product ≡ {} (mod {}), product valuation {}: {}",
            r.lhs_residue,
            r.rhs_residue,
            r.modulus,
            r.product_valuation,
            if r.holds { "agree" } else { "DISAGREE" }
        );
    }
}
