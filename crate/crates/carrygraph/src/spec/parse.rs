//! Parser for the line-oriented inequality-spec text format.
//!
//! ```text
//! file      := varsline require* proveline
//! varsline  := "vars" ident+
//! require   := "require" linform "==" linform
//! proveline := "prove" sterm (("+"|"-") sterm)* ">=" "0"
//! sterm     := [posint "*"] "s2(" linform ")"
//! linform   := atom ("+" atom)*
//! atom      := [posint "*"] ident
//! ```
//!
//! Identifiers match `[A-Za-z_][A-Za-z0-9_]*`; whitespace within a line is
//! insignificant; `#` starts a comment. A full-line comment of the shape
//! `# anchor: N` designates the `N`-th scored term (1-based) as the spec's
//! anchor form. As an extension of the grammar, the first scored term may
//! carry a leading sign so that every spec this crate can represent also has
//! a textual form.

use std::collections::HashMap;

use super::{InequalitySpec, LinearForm, SpecError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    LPar,
    RPar,
    EqEq,
    Geq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::LPar => "`(`".into(),
            Tok::RPar => "`)`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Geq => "`>=`".into(),
        }
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Syntax { line, col, msg: msg.into() }
}

fn tokenize(raw: &str, line: usize) -> Result<Vec<(Tok, usize)>, SpecError> {
    let chars: Vec<char> = raw.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        match chars[i] {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LPar, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RPar, col));
                i += 1;
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    toks.push((Tok::EqEq, col));
                    i += 2;
                } else {
                    return Err(syntax(line, col, "expected `==`"));
                }
            }
            '>' => {
                if chars.get(i + 1) == Some(&'=') {
                    toks.push((Tok::Geq, col));
                    i += 2;
                } else {
                    return Err(syntax(line, col, "expected `>=`"));
                }
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<u64>()
                    .map_err(|_| syntax(line, col, format!("integer `{text}` is too large")))?;
                toks.push((Tok::Int(value), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            c => return Err(syntax(line, col, format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

/// Cursor over the tokens of one line.
struct Cursor<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [(Tok, usize)], line: usize, raw: &str) -> Self {
        Cursor { toks, pos: 0, line, end_col: raw.chars().count() + 1 }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> SpecError {
        syntax(self.line, self.col(), msg)
    }

    fn expect(&mut self, want: &Tok) -> Result<(), SpecError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {}, found {}", want.describe(), t.describe()))),
            None => Err(self.err(format!("expected {}", want.describe()))),
        }
    }

    fn expect_end(&self) -> Result<(), SpecError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected {} at end of line", t.describe()))),
        }
    }

    /// `atom ("+" atom)*` accumulated into a coefficient vector.
    fn linform(&mut self, vars: &HashMap<String, usize>) -> Result<Vec<u64>, SpecError> {
        let mut coeffs = vec![0u64; vars.len()];
        loop {
            let col = self.col();
            let coeff = match self.peek() {
                Some(Tok::Int(k)) => {
                    let k = *k;
                    self.pos += 1;
                    if k == 0 {
                        return Err(syntax(self.line, col, "coefficient must be positive"));
                    }
                    self.expect(&Tok::Star)?;
                    k
                }
                _ => 1,
            };
            let name_col = self.col();
            let name = match self.next() {
                Some(Tok::Ident(s)) => s.clone(),
                Some(t) => {
                    return Err(syntax(
                        self.line,
                        name_col,
                        format!("expected a variable, found {}", t.describe()),
                    ))
                }
                None => return Err(syntax(self.line, name_col, "expected a variable")),
            };
            let j = *vars.get(&name).ok_or(SpecError::UnknownVariable {
                name: name.clone(),
                line: self.line,
                col: name_col,
            })?;
            coeffs[j] = coeffs[j]
                .checked_add(coeff)
                .ok_or_else(|| syntax(self.line, col, "coefficient overflow"))?;
            if self.peek() == Some(&Tok::Plus) {
                // only consume the `+` if it starts another atom; in the
                // prove line a `+` may instead join the next s2 term
                match self.toks.get(self.pos + 1).map(|(t, _)| t) {
                    Some(Tok::Ident(s)) if s == "s2" && self.toks.get(self.pos + 2).map(|(t, _)| t) == Some(&Tok::LPar) => break,
                    Some(Tok::Ident(_)) => {
                        self.pos += 1;
                    }
                    Some(Tok::Int(_)) if matches!(self.toks.get(self.pos + 2).map(|(t, _)| t), Some(Tok::Star)) => {
                        // `+ k * x` is an atom; `+ k*s2(..)` is a new term
                        match self.toks.get(self.pos + 3).map(|(t, _)| t) {
                            Some(Tok::Ident(s)) if s == "s2" && self.toks.get(self.pos + 4).map(|(t, _)| t) == Some(&Tok::LPar) => break,
                            _ => {
                                self.pos += 1;
                            }
                        }
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        Ok(coeffs)
    }

    /// `[posint "*"] "s2(" linform ")"` — returns (magnitude, coefficients).
    fn sterm(&mut self, vars: &HashMap<String, usize>) -> Result<(u64, Vec<u64>), SpecError> {
        let col = self.col();
        let mag = match self.peek() {
            Some(Tok::Int(k)) => {
                let k = *k;
                self.pos += 1;
                if k == 0 {
                    return Err(syntax(self.line, col, "coefficient must be positive"));
                }
                self.expect(&Tok::Star)?;
                k
            }
            _ => 1,
        };
        match self.next() {
            Some(Tok::Ident(s)) if s == "s2" => {}
            Some(t) => {
                return Err(syntax(
                    self.line,
                    col,
                    format!("expected `s2(`, found {}", t.describe()),
                ))
            }
            None => return Err(syntax(self.line, self.end_col, "expected `s2(`")),
        }
        self.expect(&Tok::LPar)?;
        let coeffs = self.linform(vars)?;
        self.expect(&Tok::RPar)?;
        Ok((mag, coeffs))
    }
}

/// Parse the text format into an [`InequalitySpec`].
pub fn parse_spec(text: &str) -> Result<InequalitySpec, SpecError> {
    let mut variables: Option<Vec<String>> = None;
    let mut var_index: HashMap<String, usize> = HashMap::new();
    let mut conditions: Vec<(LinearForm, LinearForm)> = Vec::new();
    let mut scored: Option<Vec<(i64, LinearForm)>> = None;
    let mut anchor_request: Option<(usize, usize)> = None; // (1-based index, line)

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(num) = rest.trim().strip_prefix("anchor:") {
                let value: usize = num.trim().parse().map_err(|_| {
                    syntax(line, 1, format!("bad anchor index `{}`", num.trim()))
                })?;
                if value == 0 {
                    return Err(syntax(line, 1, "anchor index is 1-based"));
                }
                if anchor_request.is_some() {
                    return Err(syntax(line, 1, "duplicate anchor comment"));
                }
                anchor_request = Some((value, line));
            }
            continue;
        }
        let toks = tokenize(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line, raw);
        let head_col = cur.col();
        let head = match cur.next() {
            Some(Tok::Ident(s)) => s.as_str(),
            Some(t) => {
                return Err(syntax(
                    line,
                    head_col,
                    format!("expected `vars`, `require` or `prove`, found {}", t.describe()),
                ))
            }
            None => unreachable!("empty lines are skipped"),
        };
        match head {
            "vars" => {
                if variables.is_some() {
                    return Err(syntax(line, head_col, "duplicate vars line"));
                }
                if scored.is_some() {
                    return Err(syntax(line, head_col, "vars line after prove line"));
                }
                let mut names = Vec::new();
                while let Some(t) = cur.next() {
                    match t {
                        Tok::Ident(s) => names.push(s.clone()),
                        other => {
                            return Err(syntax(
                                line,
                                cur.toks[cur.pos - 1].1,
                                format!("expected a variable name, found {}", other.describe()),
                            ))
                        }
                    }
                }
                if names.is_empty() {
                    return Err(cur.err("expected at least one variable name"));
                }
                for (j, n) in names.iter().enumerate() {
                    if var_index.insert(n.clone(), j).is_some() {
                        return Err(SpecError::DuplicateVariable(n.clone()));
                    }
                }
                variables = Some(names);
            }
            "require" => {
                if variables.is_none() {
                    return Err(syntax(line, head_col, "the vars line must come first"));
                }
                if scored.is_some() {
                    return Err(syntax(line, head_col, "require line after prove line"));
                }
                let lhs = cur.linform(&var_index)?;
                cur.expect(&Tok::EqEq)?;
                let rhs = cur.linform(&var_index)?;
                cur.expect_end()?;
                let j = conditions.len() + 1;
                conditions.push((
                    LinearForm::new(format!("E{j}_lhs"), lhs)?,
                    LinearForm::new(format!("E{j}_rhs"), rhs)?,
                ));
            }
            "prove" => {
                if variables.is_none() {
                    return Err(syntax(line, head_col, "the vars line must come first"));
                }
                if scored.is_some() {
                    return Err(syntax(line, head_col, "duplicate prove line"));
                }
                let mut forms: Vec<(i64, LinearForm)> = Vec::new();
                let mut sign: i64 = match cur.peek() {
                    Some(Tok::Minus) => {
                        cur.pos += 1;
                        -1
                    }
                    Some(Tok::Plus) => {
                        cur.pos += 1;
                        1
                    }
                    _ => 1,
                };
                loop {
                    let col = cur.col();
                    let (mag, coeffs) = cur.sterm(&var_index)?;
                    let c = i64::try_from(mag)
                        .map_err(|_| syntax(line, col, "coefficient too large"))?
                        * sign;
                    let name = format!("D{}", forms.len() + 1);
                    forms.push((c, LinearForm::new(name, coeffs)?));
                    match cur.peek() {
                        Some(Tok::Plus) => {
                            sign = 1;
                            cur.pos += 1;
                        }
                        Some(Tok::Minus) => {
                            sign = -1;
                            cur.pos += 1;
                        }
                        Some(Tok::Geq) => break,
                        Some(t) => {
                            return Err(cur.err(format!(
                                "expected `+`, `-` or `>=`, found {}",
                                t.describe()
                            )))
                        }
                        None => return Err(cur.err("expected `>= 0`")),
                    }
                }
                cur.expect(&Tok::Geq)?;
                match cur.next() {
                    Some(Tok::Int(0)) => {}
                    _ => return Err(syntax(line, cur.end_col, "the right-hand side must be `0`")),
                }
                cur.expect_end()?;
                scored = Some(forms);
            }
            other => {
                return Err(syntax(
                    line,
                    head_col,
                    format!("expected `vars`, `require` or `prove`, found `{other}`"),
                ))
            }
        }
    }

    let variables = variables.ok_or(SpecError::MissingProve)?;
    let scored = scored.ok_or(SpecError::MissingProve)?;
    let anchor = match anchor_request {
        Some((value, line)) => {
            if value > scored.len() {
                return Err(syntax(
                    line,
                    1,
                    format!(
                        "anchor index {value} is out of range: the spec has {} scored terms",
                        scored.len()
                    ),
                ));
            }
            Some(value - 1)
        }
        None => None,
    };
    InequalitySpec::new(variables, scored, conditions, anchor)
}
