//! Arc classification by surplus, and structural checks on the carry graphs
//! of the balanced-colouring inequalities.
//!
//! The *surplus* of an arc folds the change of the anchor form's carry into
//! its score. Because the carry contributions telescope, the total surplus
//! of any closed walk equals its total score, so negative arcs — the only
//! places a closed walk can lose score — can be studied locally.

use std::collections::HashSet;

use super::{CarryArc, CarryGraph, GraphError};
use crate::spec::{InequalitySpec, Letter, RowType};

/// Score of the arc plus twice the anchor carry it consumes, minus twice the
/// anchor carry it leaves behind.
pub fn surplus(graph: &CarryGraph, arc: &CarryArc, anchor: usize) -> Result<i64, GraphError> {
    if anchor >= graph.scored_count() {
        return Err(GraphError::AnchorOutOfRange { index: anchor, count: graph.scored_count() });
    }
    let u = graph.states()[arc.from].carries()[anchor] as i64;
    let v = graph.states()[arc.to].carries()[anchor] as i64;
    Ok(arc.score + 2 * u - 2 * v)
}

/// Arc indices partitioned by the sign of their surplus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcClassification {
    pub negative: Vec<usize>,
    pub neutral: usize,
    pub positive: usize,
}

pub fn classify_arcs(
    graph: &CarryGraph,
    anchor: usize,
) -> Result<ArcClassification, GraphError> {
    let mut classification =
        ArcClassification { negative: Vec::new(), neutral: 0, positive: 0 };
    for (ai, arc) in graph.arcs().iter().enumerate() {
        let s = surplus(graph, arc, anchor)?;
        match s.cmp(&0) {
            std::cmp::Ordering::Less => classification.negative.push(ai),
            std::cmp::Ordering::Equal => classification.neutral += 1,
            std::cmp::Ordering::Greater => classification.positive += 1,
        }
    }
    Ok(classification)
}

/// The recovered shape of a balanced-colouring inequality: which scored form
/// plays which role, and the row type each variable counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmStructure {
    /// Number of domino positions (the conditions come one per position).
    pub m: usize,
    /// Row type of each variable, recovered from the condition indicators.
    pub row_types: Vec<RowType>,
    /// Scored-form index of each variable's own digit-sum term.
    pub unit_forms: Vec<usize>,
    /// Scored-form index of the mixed-domino sum for each position.
    pub m_forms: Vec<usize>,
    /// Scored-form index of the all-rows sum (coefficient -3).
    pub u_form: usize,
}

impl BmStructure {
    /// Recover the roles from coefficients alone; form names never matter,
    /// so parsed spec files qualify as well as built specs.
    pub fn detect(spec: &InequalitySpec) -> Result<Self, GraphError> {
        let fail = |msg: String| GraphError::NotBmShaped(msg);
        let h = spec.var_count();
        let m = spec.conditions().len();
        if m == 0 {
            return Err(fail("the spec has no conditions".into()));
        }

        // conditions are (white, black) indicator pairs; a variable missing
        // from both has a mixed domino at that position
        let mut words: Vec<Vec<Letter>> = vec![Vec::with_capacity(m); h];
        for (i, (white, black)) in spec.conditions().iter().enumerate() {
            for j in 0..h {
                let letter = match (white.coeffs()[j], black.coeffs()[j]) {
                    (1, 0) => Letter::W,
                    (0, 1) => Letter::B,
                    (0, 0) => Letter::M,
                    _ => {
                        return Err(fail(format!(
                            "condition {} is not a disjoint 0/1 indicator pair",
                            i + 1
                        )))
                    }
                };
                words[j].push(letter);
            }
        }
        let row_types: Vec<RowType> = words
            .into_iter()
            .enumerate()
            .map(|(j, word)| {
                RowType::new(word).map_err(|_| {
                    fail(format!("variable {} would have an unbalanced row type", j + 1))
                })
            })
            .collect::<Result<_, _>>()?;

        let p = spec.scored_forms().len();
        if p != h + m + 1 {
            return Err(fail(format!("expected {} scored forms, found {p}", h + m + 1)));
        }
        let mixed_indicator: Vec<Vec<u64>> = (0..m)
            .map(|i| {
                row_types
                    .iter()
                    .map(|t| u64::from(t.letters()[i] == Letter::M))
                    .collect()
            })
            .collect();

        let mut unit_forms = vec![usize::MAX; h];
        let mut m_forms = vec![usize::MAX; m];
        let mut u_form = usize::MAX;
        for (fi, (c, form)) in spec.scored_forms().iter().enumerate() {
            let coeffs = form.coeffs();
            if *c == -3 && coeffs.iter().all(|&x| x == 1) {
                if u_form != usize::MAX {
                    return Err(fail("two all-rows sum forms".into()));
                }
                u_form = fi;
                continue;
            }
            if *c != 1 {
                return Err(fail(format!(
                    "scored form {} has coefficient {c}, expected 1",
                    fi + 1
                )));
            }
            let ones: Vec<usize> =
                (0..h).filter(|&j| coeffs[j] != 0).collect();
            if ones.len() == 1 && coeffs[ones[0]] == 1 {
                let j = ones[0];
                if unit_forms[j] != usize::MAX {
                    return Err(fail(format!("two digit-sum terms for variable {}", j + 1)));
                }
                unit_forms[j] = fi;
                continue;
            }
            match mixed_indicator.iter().position(|ind| ind == coeffs) {
                Some(i) if m_forms[i] == usize::MAX => m_forms[i] = fi,
                Some(i) => {
                    return Err(fail(format!("two mixed-domino sums for position {}", i + 1)))
                }
                None => {
                    return Err(fail(format!(
                        "scored form {} is neither a variable term, a mixed-domino sum, nor the all-rows sum",
                        fi + 1
                    )))
                }
            }
        }
        if u_form == usize::MAX {
            return Err(fail("no all-rows sum form with coefficient -3".into()));
        }
        if let Some(j) = unit_forms.iter().position(|&f| f == usize::MAX) {
            return Err(fail(format!("no digit-sum term for variable {}", j + 1)));
        }
        if let Some(i) = m_forms.iter().position(|&f| f == usize::MAX) {
            return Err(fail(format!("no mixed-domino sum for position {}", i + 1)));
        }
        Ok(BmStructure { m, row_types, unit_forms, m_forms, u_form })
    }
}

/// Outcome of [`check_wbm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbmReport {
    pub holds: bool,
    /// `(state index, position)` of the first violated instance, if any.
    pub violation: Option<(usize, usize)>,
}

/// Check that at every state the all-rows carry dominates the white, black
/// and mixed carries of every position:
/// `w[SumU] >= w[SumW_i] + w[SumB_i] + w[SumM_i]`.
pub fn check_wbm(graph: &CarryGraph, spec: &InequalitySpec) -> Result<WbmReport, GraphError> {
    let bm = BmStructure::detect(spec)?;
    if graph.form_count() != spec.form_count() {
        return Err(GraphError::StateLength {
            got: graph.form_count(),
            expected: spec.form_count(),
        });
    }
    let p = graph.scored_count();
    for (sid, state) in graph.states().iter().enumerate() {
        let c = state.carries();
        for i in 0..bm.m {
            let white = c[p + 2 * i];
            let black = c[p + 2 * i + 1];
            let mixed = c[bm.m_forms[i]];
            if c[bm.u_form] < white + black + mixed {
                return Ok(WbmReport { holds: false, violation: Some((sid, i)) });
            }
        }
    }
    Ok(WbmReport { holds: true, violation: None })
}

/// Outcome of [`check_negative_structure`]; `None` witnesses mean the check
/// passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeStructureReport {
    /// Arc indices with negative surplus.
    pub negative: Vec<usize>,
    /// A negative arc whose surplus is not -1, if any.
    pub bad_surplus: Option<usize>,
    /// A negative arc not leaving the state carrying 1 on the anchor alone.
    pub bad_source: Option<usize>,
    /// An arc into a negative-arc source whose surplus is not positive.
    pub bad_predecessor: Option<usize>,
}

impl NegativeStructureReport {
    pub fn passes(&self) -> bool {
        self.bad_surplus.is_none()
            && self.bad_source.is_none()
            && self.bad_predecessor.is_none()
    }
}

/// Verify the local structure around negative arcs: each has surplus exactly
/// -1 and leaves the state whose only nonzero carry is a 1 on the anchor
/// form, and every arc entering such a source has strictly positive surplus.
pub fn check_negative_structure(
    graph: &CarryGraph,
    anchor: usize,
) -> Result<NegativeStructureReport, GraphError> {
    let classification = classify_arcs(graph, anchor)?;
    let mut w_neg = vec![0u64; graph.form_count()];
    w_neg[anchor] = 1;
    let w_neg_id = graph.find_state(&w_neg);

    let mut report = NegativeStructureReport {
        negative: classification.negative,
        bad_surplus: None,
        bad_source: None,
        bad_predecessor: None,
    };
    let mut sources: HashSet<usize> = HashSet::new();
    for &ai in &report.negative {
        let arc = &graph.arcs()[ai];
        sources.insert(arc.from);
        if surplus(graph, arc, anchor)? != -1 && report.bad_surplus.is_none() {
            report.bad_surplus = Some(ai);
        }
        if Some(arc.from) != w_neg_id && report.bad_source.is_none() {
            report.bad_source = Some(ai);
        }
    }
    for (ai, arc) in graph.arcs().iter().enumerate() {
        if sources.contains(&arc.to) && surplus(graph, arc, anchor)? <= 0 {
            report.bad_predecessor = Some(ai);
            break;
        }
    }
    Ok(report)
}
