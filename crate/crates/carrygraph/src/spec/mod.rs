//! Inequalities between weighted binary digit sums of linear forms.
//!
//! An [`InequalitySpec`] asserts that
//!
//! ```text
//! c_1*s2(D_1) + c_2*s2(D_2) + ... + c_p*s2(D_p) >= 0
//! ```
//!
//! holds for every assignment of nonnegative integers to the variables that
//! satisfies the side conditions `E'_j = E''_j`, where every `D_i`, `E'_j`,
//! `E''_j` is a linear form with nonnegative integer coefficients. Specs are
//! built programmatically or parsed from a small line-oriented text format
//! (see [`parse_spec`]).
//!
//! The module also knows how to build the one family of specs this crate
//! cares most about: the digit-sum inequality satisfied by the row-type
//! multiplicities of balanced grid colourings, see [`build_bm_spec`].

mod parse;

pub use parse::parse_spec;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::digitsum::s2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown variable `{name}`")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("the spec has no prove line")]
    MissingProve,
    #[error("the spec declares no variables")]
    NoVariables,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("the spec has no scored digit-sum terms")]
    NoScoredForms,
    #[error("form `{0}` has no positive coefficient")]
    ZeroForm(String),
    #[error("scored term for form `{0}` has coefficient 0")]
    ZeroScore(String),
    #[error("form `{name}` has {got} coefficients, expected {expected}")]
    CoefficientCount { name: String, got: usize, expected: usize },
    #[error("anchor index {index} is out of range: the spec has {count} scored forms")]
    AnchorOutOfRange { index: usize, count: usize },
    #[error("assignment has {got} values, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
    #[error("a row type needs equally many W and B letters, got {w} W and {b} B")]
    UnbalancedRowType { w: usize, b: usize },
    #[error("row types use only the letters W, B and M, got `{0}`")]
    BadLetter(char),
    #[error("the balanced-colouring inequality is defined for odd m >= 3, got m = {0}")]
    InvalidBmWidth(u64),
    #[error("m = {m} would mean scanning 3^{m} candidate row types; this builder caps m at {max}")]
    BmWidthTooLarge { m: u64, max: u64 },
}

/// One letter of a row type: a horizontal domino of a grid row is all white,
/// all black, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    W,
    B,
    M,
}

impl Letter {
    /// The letter with white and black swapped (`M` is its own image).
    pub fn swap_colours(self) -> Letter {
        match self {
            Letter::W => Letter::B,
            Letter::B => Letter::W,
            Letter::M => Letter::M,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::W => "W",
            Letter::B => "B",
            Letter::M => "M",
        })
    }
}

/// The type of a row in a balanced colouring of a width-`2m` grid: one letter
/// per horizontal domino, with as many all-white dominoes as all-black ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowType {
    word: Vec<Letter>,
}

impl RowType {
    pub fn new(word: Vec<Letter>) -> Result<Self, SpecError> {
        let w = word.iter().filter(|&&l| l == Letter::W).count();
        let b = word.iter().filter(|&&l| l == Letter::B).count();
        if w != b {
            return Err(SpecError::UnbalancedRowType { w, b });
        }
        Ok(RowType { word })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    /// Word length `m`: the number of horizontal dominoes per row.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.word.iter().filter(|&&l| l == letter).count()
    }

    /// The row type read under the white/black colour swap.
    pub fn swap_colours(&self) -> RowType {
        RowType {
            word: self.word.iter().map(|l| l.swap_colours()).collect(),
        }
    }
}

impl fmt::Display for RowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.word {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for RowType {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let word = s
            .chars()
            .map(|c| match c {
                'W' => Ok(Letter::W),
                'B' => Ok(Letter::B),
                'M' => Ok(Letter::M),
                other => Err(SpecError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        RowType::new(word)
    }
}

/// All row types of length `m` (words over `{W, B, M}` with `#W = #B`), in
/// lexicographic order with `W < B < M`.
pub fn enumerate_types(m: usize) -> Vec<RowType> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(m);
    fn go(word: &mut Vec<Letter>, m: usize, w: usize, b: usize, out: &mut Vec<RowType>) {
        let left = m - word.len();
        // prune: the W/B imbalance can shrink by at most one per letter
        if w.abs_diff(b) > left {
            return;
        }
        if word.len() == m {
            out.push(RowType { word: word.clone() });
            return;
        }
        for l in [Letter::W, Letter::B, Letter::M] {
            word.push(l);
            let (w2, b2) = match l {
                Letter::W => (w + 1, b),
                Letter::B => (w, b + 1),
                Letter::M => (w, b),
            };
            go(word, m, w2, b2, out);
            word.pop();
        }
    }
    go(&mut word, m, 0, 0, &mut out);
    out
}

/// A linear form with nonnegative integer coefficients, at least one of them
/// positive, over the variables of an [`InequalitySpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    name: String,
    coeffs: Vec<u64>,
}

impl LinearForm {
    pub fn new(name: impl Into<String>, coeffs: Vec<u64>) -> Result<Self, SpecError> {
        let name = name.into();
        if coeffs.iter().all(|&c| c == 0) {
            return Err(SpecError::ZeroForm(name));
        }
        Ok(LinearForm { name, coeffs })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient sum; the carry this form generates never exceeds
    /// `delta - 1`.
    pub fn delta(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Value of the form at an assignment of the spec's variables.
    pub fn eval(&self, assignment: &[BigUint]) -> Result<BigUint, SpecError> {
        if assignment.len() != self.coeffs.len() {
            return Err(SpecError::AssignmentLength {
                got: assignment.len(),
                expected: self.coeffs.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(assignment)
            .map(|(&c, x)| BigUint::from(c) * x)
            .sum())
    }
}

/// A digit-sum inequality `sum_i c_i * s2(D_i) >= 0` over nonnegative integer
/// variables, subject to the side conditions `E'_j = E''_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalitySpec {
    variables: Vec<String>,
    scored_forms: Vec<(i64, LinearForm)>,
    conditions: Vec<(LinearForm, LinearForm)>,
    anchor: Option<usize>,
}

impl InequalitySpec {
    pub fn new(
        variables: Vec<String>,
        scored_forms: Vec<(i64, LinearForm)>,
        conditions: Vec<(LinearForm, LinearForm)>,
        anchor: Option<usize>,
    ) -> Result<Self, SpecError> {
        if variables.is_empty() {
            return Err(SpecError::NoVariables);
        }
        let mut seen = HashMap::new();
        for v in &variables {
            if seen.insert(v.clone(), ()).is_some() {
                return Err(SpecError::DuplicateVariable(v.clone()));
            }
        }
        if scored_forms.is_empty() {
            return Err(SpecError::NoScoredForms);
        }
        let h = variables.len();
        let check = |form: &LinearForm| -> Result<(), SpecError> {
            if form.coeffs.len() != h {
                return Err(SpecError::CoefficientCount {
                    name: form.name.clone(),
                    got: form.coeffs.len(),
                    expected: h,
                });
            }
            Ok(())
        };
        for (c, form) in &scored_forms {
            check(form)?;
            if *c == 0 {
                return Err(SpecError::ZeroScore(form.name.clone()));
            }
        }
        for (lhs, rhs) in &conditions {
            check(lhs)?;
            check(rhs)?;
        }
        if let Some(a) = anchor {
            if a >= scored_forms.len() {
                return Err(SpecError::AnchorOutOfRange {
                    index: a,
                    count: scored_forms.len(),
                });
            }
        }
        Ok(InequalitySpec {
            variables,
            scored_forms,
            conditions,
            anchor,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Number of variables `h`.
    pub fn var_count(&self) -> usize {
        self.variables.len()
    }

    pub fn scored_forms(&self) -> &[(i64, LinearForm)] {
        &self.scored_forms
    }

    pub fn conditions(&self) -> &[(LinearForm, LinearForm)] {
        &self.conditions
    }

    /// Index into [`Self::scored_forms`] of the designated anchor form, if any.
    pub fn anchor(&self) -> Option<usize> {
        self.anchor
    }

    /// Same spec with the anchor replaced.
    pub fn with_anchor(mut self, anchor: Option<usize>) -> Result<Self, SpecError> {
        if let Some(a) = anchor {
            if a >= self.scored_forms.len() {
                return Err(SpecError::AnchorOutOfRange {
                    index: a,
                    count: self.scored_forms.len(),
                });
            }
        }
        self.anchor = anchor;
        Ok(self)
    }

    /// Scored-form index of the form with the given name.
    pub fn scored_form_by_name(&self, name: &str) -> Option<usize> {
        self.scored_forms.iter().position(|(_, f)| f.name == name)
    }

    /// Every linear form of the spec in carry-vector order: the scored forms
    /// first, then both sides of each condition in turn.
    pub fn all_forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.scored_forms
            .iter()
            .map(|(_, f)| f)
            .chain(self.conditions.iter().flat_map(|(l, r)| [l, r]))
    }

    /// Number of forms returned by [`Self::all_forms`].
    pub fn form_count(&self) -> usize {
        self.scored_forms.len() + 2 * self.conditions.len()
    }

    /// Left-hand side `sum_i c_i * s2(D_i)` at the assignment, and whether
    /// every condition `E'_j = E''_j` holds there.
    pub fn eval_inequality(&self, assignment: &[BigUint]) -> Result<(i64, bool), SpecError> {
        let mut lhs: i64 = 0;
        for (c, form) in &self.scored_forms {
            lhs += c * s2(&form.eval(assignment)?) as i64;
        }
        let mut ok = true;
        for (left, right) in &self.conditions {
            if left.eval(assignment)? != right.eval(assignment)? {
                ok = false;
            }
        }
        Ok((lhs, ok))
    }

    /// Structural equality: same variables, scores, coefficients, conditions
    /// and anchor, ignoring the cosmetic form names.
    pub fn structurally_eq(&self, other: &Self) -> bool {
        self.variables == other.variables
            && self.anchor == other.anchor
            && self.scored_forms.len() == other.scored_forms.len()
            && self
                .scored_forms
                .iter()
                .zip(&other.scored_forms)
                .all(|((c1, f1), (c2, f2))| c1 == c2 && f1.coeffs == f2.coeffs)
            && self.conditions.len() == other.conditions.len()
            && self
                .conditions
                .iter()
                .zip(&other.conditions)
                .all(|((l1, r1), (l2, r2))| l1.coeffs == l2.coeffs && r1.coeffs == r2.coeffs)
    }

    fn render_linform(&self, form: &LinearForm) -> String {
        let mut parts = Vec::new();
        for (v, &c) in self.variables.iter().zip(&form.coeffs) {
            match c {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{c}*{v}")),
            }
        }
        parts.join(" + ")
    }

    /// Canonical text for this spec; [`parse_spec`] accepts it back.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("vars ");
        out.push_str(&self.variables.join(" "));
        out.push('\n');
        if let Some(a) = self.anchor {
            out.push_str(&format!("# anchor: {}\n", a + 1));
        }
        for (lhs, rhs) in &self.conditions {
            out.push_str(&format!(
                "require {} == {}\n",
                self.render_linform(lhs),
                self.render_linform(rhs)
            ));
        }
        out.push_str("prove ");
        for (i, (c, form)) in self.scored_forms.iter().enumerate() {
            let mag = c.unsigned_abs();
            let term = if mag == 1 {
                format!("s2({})", self.render_linform(form))
            } else {
                format!("{mag}*s2({})", self.render_linform(form))
            };
            if i == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else if *c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out.push_str(" >= 0\n");
        out
    }
}

/// Largest `m` accepted by [`build_bm_spec`]; enumerating row types scans
/// `3^m` words.
pub const MAX_BM_WIDTH: u64 = 15;

/// The digit-sum inequality satisfied by the row-type multiplicities of
/// balanced colourings of a width-`2m` grid, for odd `m >= 3`:
///
/// ```text
/// sum_T s2(x_T) + sum_i s2(SumM_i) - 3*s2(SumU) >= 0
/// ```
///
/// subject to `SumW_i = SumB_i` for every domino position `i`, where `x_T`
/// counts the rows of type `T`, `SumM_i`/`SumW_i`/`SumB_i` sum the `x_T`
/// whose type has an `M`/`W`/`B` at position `i`, and `SumU` sums them all.
/// The anchor is `SumU`.
pub fn build_bm_spec(m: u64) -> Result<InequalitySpec, SpecError> {
    if m < 3 || m % 2 == 0 {
        return Err(SpecError::InvalidBmWidth(m));
    }
    if m > MAX_BM_WIDTH {
        return Err(SpecError::BmWidthTooLarge { m, max: MAX_BM_WIDTH });
    }
    let m = m as usize;
    let types = enumerate_types(m);
    let h = types.len();
    let variables: Vec<String> = types.iter().map(|t| format!("x_{t}")).collect();

    let indicator = |pick: &dyn Fn(&RowType) -> bool| -> Vec<u64> {
        types.iter().map(|t| u64::from(pick(t))).collect()
    };

    let mut scored = Vec::with_capacity(h + m + 1);
    for (j, var) in variables.iter().enumerate() {
        let coeffs = (0..h).map(|k| u64::from(k == j)).collect();
        scored.push((1, LinearForm::new(var.clone(), coeffs)?));
    }
    for i in 0..m {
        let coeffs = indicator(&|t: &RowType| t.letters()[i] == Letter::M);
        scored.push((1, LinearForm::new(format!("sum_M{}", i + 1), coeffs)?));
    }
    scored.push((-3, LinearForm::new("sum_U", vec![1; h])?));
    let anchor = Some(scored.len() - 1);

    let mut conditions = Vec::with_capacity(m);
    for i in 0..m {
        let w = indicator(&|t: &RowType| t.letters()[i] == Letter::W);
        let b = indicator(&|t: &RowType| t.letters()[i] == Letter::B);
        conditions.push((
            LinearForm::new(format!("sum_W{}", i + 1), w)?,
            LinearForm::new(format!("sum_B{}", i + 1), b)?,
        ));
    }

    InequalitySpec::new(variables, scored, conditions, anchor)
}
