//! Decision procedures for binary digit-sum inequalities, and exact counters
//! for balanced grid colourings.
//!
//! The crate has two halves that meet in the middle:
//!
//! * **Inequalities.** [`spec`] models statements of the form
//!   `c_1*s2(D_1) + ... + c_p*s2(D_p) >= 0` over nonnegative integers subject
//!   to linear conditions, where `s2` is the binary digit sum and each `D_i`
//!   a linear form. [`graph`] compiles such a spec into its carry-graph
//!   automaton and decides it: either the score arrays stabilise (a proof) or
//!   an explicit violating assignment is extracted (a refutation).
//!
//! * **Colourings.** [`colourings`] counts balanced colourings of a
//!   `2n x 2m` grid — `m` white cells per row, `n` per column — by several
//!   independent methods and tests the conjecture that the 2-adic valuation
//!   of that count is `s2(m) * s2(n)`. [`congruence`] checks the modular
//!   structure of those counts via constant terms of Laurent-polynomial
//!   powers.
//!
//! The bridge is the digit-sum inequality produced by [`spec::build_bm_spec`],
//! whose truth pins the valuation of the colouring counts from below, and
//! which the carry graph proves mechanically.

pub mod cli;
pub mod colourings;
pub mod congruence;
pub mod digitsum;
pub mod graph;
pub mod spec;

pub use colourings::{CountReport, MultiplicityVector, Verdict};
pub use congruence::{FactorisationReport, LaurentPoly, LaurentTerm, LemmaAbReport};
pub use graph::{CarryArc, CarryGraph, CarryState, ProofOutcome};
pub use spec::{InequalitySpec, LinearForm, RowType};
