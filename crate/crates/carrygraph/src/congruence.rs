//! Residue structure of the colouring counts.
//!
//! The count of balanced colourings equals the constant term of a power of a
//! *step polynomial*: each grid row contributes a `±1` exponent pattern over
//! the `2m` columns, and only exponent-balanced products survive. Working
//! with such Laurent polynomials modulo `2^K` gives an independent route to
//! the counts' low-order bits, and iterated squaring modulo increasing powers
//! of two explains two families of congruences that this module checks
//! exactly:
//!
//! * a block-splitting congruence — when the column target `n` splits as
//!   `2^(a+b+1) * n_high + n_low` with a zero gap between the parts, the
//!   count factors modulo `2^(a+2)` ([`check_lemma_ab`]);
//! * a factorisation along sparse binary patterns — when the ones in `n` are
//!   separated by wide zero gaps, the count factors into single-power-of-two
//!   counts modulo `2^(k+1)`, with the product's 2-adic valuation pinned
//!   exactly ([`check_sparse_factorisation`]).
//!
//! All checks run on exact counts from [`crate::colourings::count_dp`]; the
//! Laurent engine is the cross-check, not the source of truth.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::colourings::{count_dp, ColouringsError};
use crate::digitsum::{s2, v2};

/// Errors from residue computations and congruence checks.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CongruenceError {
    /// The constant-term route is only wired for narrow grids and residues
    /// that fit comfortably in one machine word.
    #[error("constant-term route supports m <= 2, n <= 8, 1 <= bits <= 32; got m = {m}, n = {n}, bits = {bits}")]
    ConstantTermGuard { m: u64, n: u64, bits: u32 },
    /// The low part of a split must fit strictly below the zero gap.
    #[error("low part {n_low} must be smaller than 2^{b} = {bound}")]
    RemainderTooLarge { n_low: u64, b: u32, bound: u64 },
    /// A factorisation needs at least one exponent.
    #[error("exponent list must be nonempty")]
    EmptyExponents,
    /// Factorisation exponents must be strictly decreasing.
    #[error("exponent list must be strictly decreasing")]
    ExponentsNotDescending,
    /// Parameters would shift past the 64-bit range.
    #[error("exponent {found} exceeds the supported maximum {max}")]
    ExponentTooLarge { found: u64, max: u64 },
    /// The binary pattern of `n` is not sparse enough for the requested check.
    #[error("{n} is not {k}-sparse: some gap between ones has fewer than {k} zeros")]
    NotSparse { n: u64, k: u64 },
    /// The residue window must fit in a `u64`.
    #[error("modulus 2^{bits} does not fit the 64-bit residue window")]
    ModulusTooWide { bits: u64 },
    /// A guard of the underlying exact counter fired.
    #[error(transparent)]
    Count(#[from] ColouringsError),
}

/// One monomial of a [`LaurentPoly`]: an integer exponent per variable and a
/// coefficient reduced modulo `2^K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentTerm {
    pub exponents: Vec<i64>,
    pub coefficient: u64,
}

/// A finite-support Laurent polynomial over `Z/2^K`, stored sparsely.
///
/// Only nonzero coefficients are kept, keyed by exponent vector in a
/// [`BTreeMap`], so term order — and therefore any rendering — is
/// deterministic. `K` is fixed per polynomial (`1 ..= 63`); all arithmetic
/// reduces eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: usize,
    bits: u32,
    terms: BTreeMap<Vec<i64>, u64>,
}

impl LaurentPoly {
    fn mask(bits: u32) -> u64 {
        assert!((1..=63).contains(&bits), "modulus width must be 1..=63 bits");
        (1u64 << bits) - 1
    }

    /// The constant polynomial `value mod 2^bits` in `vars` variables.
    pub fn constant(vars: usize, bits: u32, value: u64) -> Self {
        Self::from_terms(
            vars,
            bits,
            [LaurentTerm { exponents: vec![0; vars], coefficient: value }],
        )
    }

    /// Builds a polynomial from terms, summing duplicates and dropping
    /// anything that reduces to zero.
    ///
    /// # Panics
    /// If `bits` is outside `1..=63` or a term's exponent vector does not
    /// have length `vars`.
    pub fn from_terms(
        vars: usize,
        bits: u32,
        terms: impl IntoIterator<Item = LaurentTerm>,
    ) -> Self {
        let mask = Self::mask(bits);
        let mut map: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for term in terms {
            assert_eq!(
                term.exponents.len(),
                vars,
                "term has {} exponents in a {}-variable polynomial",
                term.exponents.len(),
                vars
            );
            let entry = map.entry(term.exponents).or_insert(0);
            *entry = (*entry + (term.coefficient & mask)) & mask;
        }
        map.retain(|_, c| *c != 0);
        Self { vars, bits, terms: map }
    }

    /// The step polynomial of a width-`m` grid: the sum of all `±1`
    /// monomials in `2m` variables whose exponents sum to zero. One term per
    /// admissible row pattern (`+1` marks a white cell, `-1` a black one),
    /// so raising it to the `2n`-th power and reading off the constant term
    /// counts balanced colourings.
    ///
    /// # Panics
    /// If `m > 8` (the pattern enumeration is exponential in `m`).
    pub fn balanced_steps(m: u64, bits: u32) -> Self {
        assert!(m <= 8, "step polynomial limited to width 8");
        let vars = (2 * m) as usize;
        let mut terms = Vec::new();
        for pattern in 0u32..(1u32 << vars) {
            if pattern.count_ones() as u64 != m {
                continue;
            }
            let exponents: Vec<i64> =
                (0..vars).map(|j| if pattern >> j & 1 == 1 { 1 } else { -1 }).collect();
            terms.push(LaurentTerm { exponents, coefficient: 1 });
        }
        Self::from_terms(vars, bits, terms)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// The coefficient modulus width `K` (coefficients live in `Z/2^K`).
    pub fn modulus_bits(&self) -> u32 {
        self.bits
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// All nonzero terms in sorted exponent order.
    pub fn terms(&self) -> Vec<LaurentTerm> {
        self.terms
            .iter()
            .map(|(e, c)| LaurentTerm { exponents: e.clone(), coefficient: *c })
            .collect()
    }

    /// The coefficient at an exponent vector (zero if absent).
    ///
    /// # Panics
    /// If `exponents.len() != self.vars()`.
    pub fn coefficient(&self, exponents: &[i64]) -> u64 {
        assert_eq!(exponents.len(), self.vars, "exponent vector length mismatch");
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// The coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> u64 {
        self.terms.get(vec![0i64; self.vars].as_slice()).copied().unwrap_or(0)
    }

    /// Product, reduced modulo `2^K`.
    ///
    /// # Panics
    /// If the operands disagree on variable count or modulus width.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable counts differ");
        assert_eq!(self.bits, other.bits, "modulus widths differ");
        let mask = Self::mask(self.bits) as u128;
        let mut map: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exponents: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = map.entry(exponents).or_insert(0);
                *entry = ((*entry as u128 + *c1 as u128 * *c2 as u128) & mask) as u64;
            }
        }
        map.retain(|_, c| *c != 0);
        Self { vars: self.vars, bits: self.bits, terms: map }
    }

    /// `self` raised to the `exponent`-th power by binary exponentiation
    /// (`exponent == 0` gives the constant 1).
    pub fn pow(&self, exponent: u64) -> Self {
        let mut result = Self::constant(self.vars, self.bits, 1);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitutes `x_i -> x_i^factor` in every variable: exponent vectors
    /// are scaled entrywise, coefficients are untouched (terms that collide
    /// merge, reduced modulo `2^K`).
    pub fn scale_exponents(&self, factor: i64) -> Self {
        let mask = Self::mask(self.bits);
        let mut map: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (e, c) in &self.terms {
            let exponents: Vec<i64> = e.iter().map(|a| a * factor).collect();
            let entry = map.entry(exponents).or_insert(0);
            *entry = (*entry + *c) & mask;
        }
        map.retain(|_, c| *c != 0);
        Self { vars: self.vars, bits: self.bits, terms: map }
    }
}

/// The count of balanced colourings modulo `2^bits`, computed through the
/// Laurent route: constant term of the step polynomial raised to the `2n`-th
/// power, all coefficients reduced modulo `2^bits`.
///
/// Guards: `m <= 2`, `n <= 8`, `1 <= bits <= 32`. This is a deliberate
/// cross-check of [`count_dp`]'s low-order bits by a different algorithm, not
/// a production counter.
pub fn constant_term_power(m: u64, n: u64, bits: u32) -> Result<u64, CongruenceError> {
    if m > 2 || n > 8 || !(1..=32).contains(&bits) {
        return Err(CongruenceError::ConstantTermGuard { m, n, bits });
    }
    Ok(LaurentPoly::balanced_steps(m, bits).pow(2 * n).constant_term())
}

fn residue(count: &BigUint, modulus: u64) -> u64 {
    (count % BigUint::from(modulus))
        .to_u64()
        .expect("residue below a u64 modulus fits in u64")
}

/// Outcome of the block-splitting congruence check: both residues modulo
/// `2^(a+2)` and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaAbReport {
    /// The recombined column target `2^(a+b+1) * n_high + n_low`.
    pub n: u64,
    /// The residue window, `2^(a+2)`.
    pub modulus: u64,
    /// `B(m, n) mod 2^(a+2)`.
    pub lhs_residue: u64,
    /// `B(m, 2^a * n_high) * B(m, n_low) mod 2^(a+2)`.
    pub rhs_residue: u64,
    pub holds: bool,
}

/// Checks the block-splitting congruence
/// `B(m, 2^(a+b+1) * n_high + n_low)  ≡  B(m, 2^a * n_high) * B(m, n_low)`
/// modulo `2^(a+2)`, on exact counts.
///
/// Requires `n_low < 2^b` — the low part must sit strictly below the zero
/// gap that separates it from the high part. `n_high = 0` is allowed (the
/// empty grid counts one colouring).
pub fn check_lemma_ab(
    m: u64,
    a: u32,
    b: u32,
    n_high: u64,
    n_low: u64,
) -> Result<LemmaAbReport, CongruenceError> {
    if u64::from(a) + 2 > 62 || u64::from(a) + u64::from(b) + 1 > 62 {
        return Err(CongruenceError::ModulusTooWide { bits: u64::from(a) + 2 });
    }
    let bound = 1u64 << b;
    if n_low >= bound {
        return Err(CongruenceError::RemainderTooLarge { n_low, b, bound });
    }
    let n = (1u64 << (a + b + 1))
        .checked_mul(n_high)
        .and_then(|hi| hi.checked_add(n_low))
        .ok_or(CongruenceError::ModulusTooWide { bits: u64::from(a) + u64::from(b) + 1 })?;
    let modulus = 1u64 << (a + 2);
    let lhs = count_dp(m, n)?;
    let high = count_dp(m, (1u64 << a) * n_high)?;
    let low = count_dp(m, n_low)?;
    let lhs_residue = residue(&lhs, modulus);
    let rhs_residue = residue(&(high * low), modulus);
    Ok(LemmaAbReport { n, modulus, lhs_residue, rhs_residue, holds: lhs_residue == rhs_residue })
}

/// Whether every pair of consecutive ones in the binary expansion of `n` is
/// separated by at least `k` zeros. `n = 0` holds vacuously.
pub fn is_k_sparse(n: u64, k: u64) -> bool {
    let mut rest = n;
    let mut prev: Option<u64> = None;
    while rest != 0 {
        let pos = u64::from(rest.trailing_zeros());
        if let Some(p) = prev {
            if pos - p - 1 < k {
                return false;
            }
        }
        prev = Some(pos);
        rest &= rest - 1;
    }
    true
}

/// Outcome of the sparse-pattern factorisation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorisationReport {
    /// The column target `sum of 2^(e_i)`.
    pub n: u64,
    /// The sparsity `k = s2(m) * h` demanded of `n` (`h` factors).
    pub sparsity: u64,
    /// The residue window, `2^(k+1)`.
    pub modulus: u64,
    /// `B(m, n) mod 2^(k+1)`.
    pub lhs_residue: u64,
    /// The factor product `mod 2^(k+1)`.
    pub rhs_residue: u64,
    /// Exact 2-adic valuation of the factor product.
    pub product_valuation: u64,
    /// Residues agree **and** the product valuation equals the sparsity.
    pub holds: bool,
}

/// Checks the factorisation of `B(m, n)` along a sparse binary pattern
/// `n = 2^(e_1) + ... + 2^(e_h)` with `e_1 > ... > e_h`:
///
/// ```text
/// B(m, n)  ≡  B(m, 2^(e_1 - e_2 - 2)) * ... * B(m, 2^(e_(h-1) - e_h - 2)) * B(m, 2^(e_h))
/// ```
///
/// modulo `2^(k+1)` where `k = s2(m) * h`, together with the claim that the
/// product's 2-adic valuation is exactly `k`. Requires `n` to be `k`-sparse,
/// which forces every middle factor's exponent to be at least 1 whenever
/// `h >= 2`.
pub fn check_sparse_factorisation(
    m: u64,
    exponents: &[u64],
) -> Result<FactorisationReport, CongruenceError> {
    if exponents.is_empty() {
        return Err(CongruenceError::EmptyExponents);
    }
    if exponents.windows(2).any(|w| w[0] <= w[1]) {
        return Err(CongruenceError::ExponentsNotDescending);
    }
    if let Some(&e) = exponents.iter().find(|&&e| e > 62) {
        return Err(CongruenceError::ExponentTooLarge { found: e, max: 62 });
    }
    let n: u64 = exponents.iter().map(|&e| 1u64 << e).sum();
    let h = exponents.len() as u64;
    let sparsity = s2(&BigUint::from(m)) * h;
    if sparsity + 1 > 62 {
        return Err(CongruenceError::ModulusTooWide { bits: sparsity + 1 });
    }
    if !is_k_sparse(n, sparsity) {
        return Err(CongruenceError::NotSparse { n, k: sparsity });
    }
    let modulus = 1u64 << (sparsity + 1);
    let mut product = BigUint::from(1u64);
    for pair in exponents.windows(2) {
        product *= count_dp(m, 1u64 << (pair[0] - pair[1] - 2))?;
    }
    product *= count_dp(m, 1u64 << exponents[h as usize - 1])?;
    let product_valuation =
        v2(&product).expect("a product of positive counts is positive");
    let lhs_residue = residue(&count_dp(m, n)?, modulus);
    let rhs_residue = residue(&product, modulus);
    Ok(FactorisationReport {
        n,
        sparsity,
        modulus,
        lhs_residue,
        rhs_residue,
        product_valuation,
        holds: lhs_residue == rhs_residue && product_valuation == sparsity,
    })
}
