use std::fmt;
use std::sync::Arc;

use super::sexpr::{read_all, read_one, Sexp, SyntaxError};
use crate::multiset::Bag;

/// A point of a web.
///
/// `Label` only occurs in webs of explicit table spaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Star,
    Inl(Box<Point>),
    Inr(Box<Point>),
    Pair(Box<Point>, Box<Point>),
    Bag(Bag<Point>),
    Label(Arc<str>),
}

impl Point {
    pub fn inl(p: Point) -> Point {
        Point::Inl(Box::new(p))
    }

    pub fn inr(p: Point) -> Point {
        Point::Inr(Box::new(p))
    }

    pub fn pair(a: Point, b: Point) -> Point {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn bag<I: IntoIterator<Item = Point>>(items: I) -> Point {
        Point::Bag(items.into_iter().collect())
    }

    pub fn empty_bag() -> Point {
        Point::Bag(Bag::new())
    }

    pub fn label(name: &str) -> Point {
        Point::Label(Arc::from(name))
    }

    /// `inl *`, the point "true" of `bool`.
    pub fn v() -> Point {
        Point::inl(Point::Star)
    }

    /// `inr *`, the point "false" of `bool`.
    pub fn f() -> Point {
        Point::inr(Point::Star)
    }

    /// Node count. A bag counts one plus the sizes of its elements with
    /// multiplicity.
    pub fn size(&self) -> usize {
        match self {
            Point::Star | Point::Label(_) => 1,
            Point::Inl(p) | Point::Inr(p) => 1 + p.size(),
            Point::Pair(a, b) => 1 + a.size() + b.size(),
            Point::Bag(b) => 1 + b.counts().map(|(p, c)| c * p.size()).sum::<usize>(),
        }
    }

    pub fn as_bag(&self) -> Option<&Bag<Point>> {
        match self {
            Point::Bag(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Point, &Point)> {
        match self {
            Point::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Canonical s-expression form accepted by [`parse_point`].
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Point::Star => out.push('*'),
            Point::Label(l) => out.push_str(l),
            Point::Inl(p) => {
                out.push_str("(inl ");
                p.render_into(out);
                out.push(')');
            }
            Point::Inr(p) => {
                out.push_str("(inr ");
                p.render_into(out);
                out.push(')');
            }
            Point::Pair(a, b) => {
                out.push_str("(pair ");
                a.render_into(out);
                out.push(' ');
                b.render_into(out);
                out.push(')');
            }
            Point::Bag(b) => {
                out.push_str("(bag");
                for p in b.iter() {
                    out.push(' ');
                    p.render_into(out);
                }
                out.push(')');
            }
        }
    }

    /// Compact human form: `v`/`f` for the booleans, `[..]` for bags and
    /// `(a,b)` for pairs.
    pub fn pretty(&self) -> String {
        match self {
            Point::Star => "*".into(),
            Point::Label(l) => l.to_string(),
            Point::Inl(p) if **p == Point::Star => "v".into(),
            Point::Inr(p) if **p == Point::Star => "f".into(),
            Point::Inl(p) => format!("inl {}", p.pretty()),
            Point::Inr(p) => format!("inr {}", p.pretty()),
            Point::Pair(a, b) => format!("({},{})", a.pretty(), b.pretty()),
            Point::Bag(b) => {
                let items: Vec<String> = b.iter().map(Point::pretty).collect();
                format!("[{}]", items.join(","))
            }
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

const KEYWORDS: [&str; 4] = ["inl", "inr", "pair", "bag"];

pub fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '\'')
        && !KEYWORDS.contains(&s)
}

pub(crate) fn point_from_sexp(s: &Sexp) -> Result<Point, SyntaxError> {
    match s {
        Sexp::Atom(a, pos) => {
            if a == "*" {
                Ok(Point::Star)
            } else if is_label(a) {
                Ok(Point::label(a))
            } else {
                Err(SyntaxError::new(*pos, format!("`{a}` is not a point")))
            }
        }
        Sexp::List(_, pos) => {
            let Some((head, args)) = s.as_call() else {
                return Err(SyntaxError::new(*pos, "expected a point constructor"));
            };
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(SyntaxError::new(
                        *pos,
                        format!("`{head}` takes {n} argument(s), found {}", args.len()),
                    ))
                }
            };
            match head {
                "inl" => {
                    arity(1)?;
                    Ok(Point::inl(point_from_sexp(&args[0])?))
                }
                "inr" => {
                    arity(1)?;
                    Ok(Point::inr(point_from_sexp(&args[0])?))
                }
                "pair" => {
                    arity(2)?;
                    Ok(Point::pair(point_from_sexp(&args[0])?, point_from_sexp(&args[1])?))
                }
                "bag" => Ok(Point::Bag(args.iter().map(point_from_sexp).collect::<Result<_, _>>()?)),
                other => Err(SyntaxError::new(*pos, format!("unknown point constructor `{other}`"))),
            }
        }
    }
}

pub fn parse_point(text: &str) -> Result<Point, SyntaxError> {
    point_from_sexp(&read_one(text)?)
}

/// Parses a whitespace-separated sequence of points.
pub fn parse_points(text: &str) -> Result<Vec<Point>, SyntaxError> {
    read_all(text)?.iter().map(point_from_sexp).collect()
}

/// Parses a bag written `(bag ...)`.
pub fn parse_bag(text: &str) -> Result<Bag<Point>, SyntaxError> {
    let s = read_one(text)?;
    match point_from_sexp(&s)? {
        Point::Bag(b) => Ok(b),
        _ => Err(SyntaxError::new(s.pos(), "expected `(bag ...)`")),
    }
}
