//! Text and serde forms of bounded interpretations.
//!
//! ```text
//! sequent (why (with bot bot)) (plus 1 1)
//! bound 4
//! ((bag (inl *)) (inl *))
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Interp, Tuple};
use crate::syntax::formula::{formula_from_sexp, parse_formula};
use crate::syntax::point::{parse_point, point_from_sexp};
use crate::syntax::sexpr::{read_all, Sexp};
use crate::syntax::{point_in_web, Formula, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpFormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("tuple {tuple} is not in the web of the sequent")]
    OutsideWeb { tuple: String },
    #[error("tuple {tuple} exceeds bound {bound}")]
    OverBound { tuple: String, bound: usize },
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
}

fn line_err(line: usize, message: impl Into<String>) -> InterpFormatError {
    InterpFormatError::Line { line, message: message.into() }
}

fn offset(e: SyntaxError, line: usize) -> InterpFormatError {
    line_err(line, e.message)
}

pub fn parse_interp(text: &str) -> Result<Interp, InterpFormatError> {
    let mut sequent: Option<Vec<Formula>> = None;
    let mut bound: Option<usize> = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("sequent") {
            if sequent.is_some() {
                return Err(line_err(line, "duplicate sequent"));
            }
            let forms = read_all(rest).map_err(|e| offset(e, line))?;
            let fs = forms.iter().map(formula_from_sexp).collect::<Result<Vec<_>, _>>().map_err(|e| offset(e, line))?;
            sequent = Some(fs);
        } else if let Some(rest) = body.strip_prefix("bound") {
            if bound.is_some() {
                return Err(line_err(line, "duplicate bound"));
            }
            let n = rest.trim().parse::<usize>().map_err(|_| line_err(line, "bound must be a natural number"))?;
            bound = Some(n);
        } else {
            rows.push((line, body));
        }
    }
    let sequent = sequent.ok_or(InterpFormatError::MissingHeader("sequent"))?;
    let bound = bound.ok_or(InterpFormatError::MissingHeader("bound"))?;
    let mut tuples = BTreeSet::new();
    for (line, row) in rows {
        let forms = read_all(row).map_err(|e| offset(e, line))?;
        let [Sexp::List(items, _)] = forms.as_slice() else {
            return Err(line_err(line, "expected one parenthesised tuple"));
        };
        let t = items.iter().map(point_from_sexp).collect::<Result<Tuple, _>>().map_err(|e| offset(e, line))?;
        if t.len() != sequent.len() {
            return Err(line_err(line, format!("tuple has {} components, sequent has {}", t.len(), sequent.len())));
        }
        tuples.insert(t);
    }
    let interp = Interp { sequent, tuples, bound };
    validate(&interp)?;
    Ok(interp)
}

fn validate(i: &Interp) -> Result<(), InterpFormatError> {
    for t in &i.tuples {
        if t.len() != i.sequent.len() || t.iter().zip(&i.sequent).any(|(p, f)| !point_in_web(f, p)) {
            return Err(InterpFormatError::OutsideWeb { tuple: render_tuple(t) });
        }
        if t.iter().any(|p| p.size() > i.bound) {
            return Err(InterpFormatError::OverBound { tuple: render_tuple(t), bound: i.bound });
        }
    }
    Ok(())
}

fn render_tuple(t: &[crate::syntax::Point]) -> String {
    let parts: Vec<String> = t.iter().map(|p| p.render()).collect();
    format!("({})", parts.join(" "))
}

pub fn render_interp(i: &Interp) -> String {
    let fs: Vec<String> = i.sequent.iter().map(Formula::render).collect();
    let mut out = format!("sequent {}\nbound {}\n", fs.join(" "), i.bound);
    for t in &i.tuples {
        out.push_str(&render_tuple(t));
        out.push('\n');
    }
    out
}

/// Serde mirror of [`Interp`] with formulas and points in s-expression form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpDoc {
    pub sequent: Vec<String>,
    pub bound: usize,
    pub tuples: Vec<Vec<String>>,
}

impl From<&Interp> for InterpDoc {
    fn from(i: &Interp) -> Self {
        InterpDoc {
            sequent: i.sequent.iter().map(Formula::render).collect(),
            bound: i.bound,
            tuples: i.tuples.iter().map(|t| t.iter().map(|p| p.render()).collect()).collect(),
        }
    }
}

impl TryFrom<&InterpDoc> for Interp {
    type Error = InterpFormatError;

    fn try_from(d: &InterpDoc) -> Result<Self, Self::Error> {
        let sequent = d.sequent.iter().map(|s| parse_formula(s)).collect::<Result<Vec<_>, _>>()?;
        let mut tuples = BTreeSet::new();
        for t in &d.tuples {
            tuples.insert(t.iter().map(|s| parse_point(s)).collect::<Result<Tuple, _>>()?);
        }
        let interp = Interp { sequent, tuples, bound: d.bound };
        validate(&interp)?;
        Ok(interp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Point;

    const SAMPLE: &str = "# two tuples\nsequent (why (with bot bot)) (plus 1 1)\nbound 4\n((bag (inl *)) (inl *))\n((bag) (inr *))\n";

    #[test]
    fn round_trip() {
        let i = parse_interp(SAMPLE).unwrap();
        assert_eq!(i.len(), 2);
        assert!(i.contains(&[Point::empty_bag(), Point::f()]));
        assert_eq!(parse_interp(&render_interp(&i)).unwrap(), i);
        let doc = InterpDoc::from(&i);
        assert_eq!(Interp::try_from(&doc).unwrap(), i);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_interp("bound 3\n"), Err(InterpFormatError::MissingHeader("sequent"))));
        assert!(matches!(parse_interp("sequent 1\nbound 3\n((inl *))\n"), Err(InterpFormatError::OutsideWeb { .. })));
        assert!(matches!(parse_interp("sequent 1 1\nbound 3\n(*)\n"), Err(InterpFormatError::Line { line: 3, .. })));
        assert!(matches!(
            parse_interp("sequent (why 1)\nbound 1\n((bag * *))\n"),
            Err(InterpFormatError::OverBound { .. })
        ));
    }
}
