//! Machine-checkable proof/refutation certificates.
//!
//! A refutation certificate is self-contained: re-checking it only takes
//! digit-sum arithmetic on the embedded assignment, no graph machinery.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{CarryGraph, GraphError, ProofOutcome};
use crate::spec::InequalitySpec;

/// JSON certificate for one `decide` run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `"proved"` or `"refuted"`.
    pub verdict: String,
    pub iterations: u64,
    pub states: u64,
    pub arcs: u64,
    /// Count of negative-surplus arcs; present when an anchor was available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_arcs: Option<u64>,
    /// Violating assignment as decimal strings, one per variable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<String>>,
    /// The root-to-root walk behind the assignment, one 0/1 column per digit
    /// position.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk_inputs: Option<Vec<Vec<u8>>>,
    /// Left-hand side at the assignment (negative).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<i64>,
}

impl Certificate {
    pub fn new(
        outcome: &ProofOutcome,
        graph: &CarryGraph,
        negative_arcs: Option<u64>,
    ) -> Self {
        match outcome {
            ProofOutcome::Proved { iterations, states, arcs } => Certificate {
                verdict: "proved".into(),
                iterations: *iterations,
                states: *states as u64,
                arcs: *arcs as u64,
                negative_arcs,
                assignment: None,
                walk_inputs: None,
                lhs: None,
            },
            ProofOutcome::Refuted { assignment, walk_inputs, lhs, iterations } => Certificate {
                verdict: "refuted".into(),
                iterations: *iterations,
                states: graph.state_count() as u64,
                arcs: graph.arc_count() as u64,
                negative_arcs,
                assignment: Some(assignment.iter().map(|x| x.to_str_radix(10)).collect()),
                walk_inputs: Some(walk_inputs.clone()),
                lhs: Some(*lhs),
            },
        }
    }

    /// Re-check a refutation certificate against a spec using digit-sum
    /// arithmetic only: the embedded assignment must satisfy the conditions,
    /// evaluate below zero, and agree with the recorded left-hand side.
    pub fn recheck_refutation(&self, spec: &InequalitySpec) -> Result<bool, GraphError> {
        if self.verdict != "refuted" {
            return Ok(false);
        }
        let Some(assignment) = &self.assignment else {
            return Err(GraphError::BadCertificate("refutation without assignment".into()));
        };
        let values: Vec<BigUint> = assignment
            .iter()
            .map(|s| BigUint::parse_bytes(s.as_bytes(), 10))
            .collect::<Option<_>>()
            .ok_or_else(|| {
                GraphError::BadCertificate("assignment entries must be decimal integers".into())
            })?;
        let (lhs, conditions_ok) = spec.eval_inequality(&values)?;
        Ok(conditions_ok && lhs < 0 && self.lhs.map_or(true, |recorded| recorded == lhs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates are plain data")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text)
            .map_err(|e| GraphError::BadCertificate(e.to_string()))
    }
}
