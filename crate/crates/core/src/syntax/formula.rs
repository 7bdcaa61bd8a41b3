use std::fmt;

use super::sexpr::{read_one, Sexp, SyntaxError};

/// Formulas of propositional linear logic without atoms. `bool` and `nat n`
/// are sugar expanded at construction time.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    One,
    Bot,
    Zero,
    Top,
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    OfCourse(Box<Formula>),
    WhyNot(Box<Formula>),
}

impl Formula {
    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Box::new(a), Box::new(b))
    }

    pub fn of_course(a: Formula) -> Formula {
        Formula::OfCourse(Box::new(a))
    }

    pub fn why_not(a: Formula) -> Formula {
        Formula::WhyNot(Box::new(a))
    }

    /// `1 ⊕ 1`; `inl *` is true and `inr *` is false.
    pub fn bool() -> Formula {
        Formula::plus(Formula::One, Formula::One)
    }

    /// The `n`-fold plus of `1`, nested to the right. `nat(1)` is `1`.
    pub fn nat(n: usize) -> Formula {
        assert!(n >= 1, "nat needs at least one summand");
        (1..n).fold(Formula::One, |acc, _| Formula::plus(Formula::One, acc))
    }

    /// `a ⊸ b`, i.e. `a⊥ ⅋ b`.
    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::par(a.dual(), b)
    }

    /// De Morgan dual.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::One => Formula::Bot,
            Formula::Bot => Formula::One,
            Formula::Zero => Formula::Top,
            Formula::Top => Formula::Zero,
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            Formula::With(a, b) => Formula::plus(a.dual(), b.dual()),
            Formula::Plus(a, b) => Formula::with(a.dual(), b.dual()),
            Formula::OfCourse(a) => Formula::why_not(a.dual()),
            Formula::WhyNot(a) => Formula::of_course(a.dual()),
        }
    }

    pub fn is_why_not(&self) -> bool {
        matches!(self, Formula::WhyNot(_))
    }

    pub fn is_exponential_free(&self) -> bool {
        match self {
            Formula::One | Formula::Bot | Formula::Zero | Formula::Top => true,
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::With(a, b) | Formula::Plus(a, b) => {
                a.is_exponential_free() && b.is_exponential_free()
            }
            Formula::OfCourse(_) | Formula::WhyNot(_) => false,
        }
    }

    /// S-expression form accepted by [`parse_formula`].
    pub fn render(&self) -> String {
        match self {
            Formula::One => "1".into(),
            Formula::Bot => "bot".into(),
            Formula::Zero => "0".into(),
            Formula::Top => "top".into(),
            Formula::Tensor(a, b) => format!("(tensor {} {})", a.render(), b.render()),
            Formula::Par(a, b) => format!("(par {} {})", a.render(), b.render()),
            Formula::With(a, b) => format!("(with {} {})", a.render(), b.render()),
            Formula::Plus(a, b) => format!("(plus {} {})", a.render(), b.render()),
            Formula::OfCourse(a) => format!("(ofc {})", a.render()),
            Formula::WhyNot(a) => format!("(why {})", a.render()),
        }
    }

    fn is_binary(&self) -> bool {
        matches!(
            self,
            Formula::Tensor(..) | Formula::Par(..) | Formula::With(..) | Formula::Plus(..)
        )
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let operand = |f: &mut fmt::Formatter<'_>, x: &Formula| {
            if x.is_binary() {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            operand(f, a)?;
            f.write_str(op)?;
            operand(f, b)
        };
        match self {
            Formula::One => f.write_str("1"),
            Formula::Bot => f.write_str("⊥"),
            Formula::Zero => f.write_str("0"),
            Formula::Top => f.write_str("⊤"),
            Formula::Tensor(a, b) => binary(f, a, "⊗", b),
            Formula::Par(a, b) => binary(f, a, "⅋", b),
            Formula::With(a, b) => binary(f, a, "&", b),
            Formula::Plus(a, b) => binary(f, a, "⊕", b),
            Formula::OfCourse(a) => {
                f.write_str("!")?;
                operand(f, a)
            }
            Formula::WhyNot(a) => {
                f.write_str("?")?;
                operand(f, a)
            }
        }
    }
}

pub(crate) fn formula_from_sexp(s: &Sexp) -> Result<Formula, SyntaxError> {
    match s {
        Sexp::Atom(a, pos) => match a.as_str() {
            "1" => Ok(Formula::One),
            "bot" => Ok(Formula::Bot),
            "0" => Ok(Formula::Zero),
            "top" => Ok(Formula::Top),
            "bool" => Ok(Formula::bool()),
            other => Err(SyntaxError::new(*pos, format!("unknown formula symbol `{other}`"))),
        },
        Sexp::List(_, pos) => {
            let Some((head, args)) = s.as_call() else {
                return Err(SyntaxError::new(*pos, "expected a formula constructor"));
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
                "tensor" | "par" | "with" | "plus" => {
                    arity(2)?;
                    let a = formula_from_sexp(&args[0])?;
                    let b = formula_from_sexp(&args[1])?;
                    Ok(match head {
                        "tensor" => Formula::tensor(a, b),
                        "par" => Formula::par(a, b),
                        "with" => Formula::with(a, b),
                        _ => Formula::plus(a, b),
                    })
                }
                "ofc" => {
                    arity(1)?;
                    Ok(Formula::of_course(formula_from_sexp(&args[0])?))
                }
                "why" => {
                    arity(1)?;
                    Ok(Formula::why_not(formula_from_sexp(&args[0])?))
                }
                "dual" => {
                    arity(1)?;
                    Ok(formula_from_sexp(&args[0])?.dual())
                }
                "nat" => {
                    arity(1)?;
                    match &args[0] {
                        Sexp::Atom(n, p) => match n.parse::<usize>() {
                            Ok(n) if (1..=64).contains(&n) => Ok(Formula::nat(n)),
                            _ => Err(SyntaxError::new(*p, "nat expects an integer between 1 and 64")),
                        },
                        other => Err(SyntaxError::new(other.pos(), "nat expects an integer")),
                    }
                }
                other => Err(SyntaxError::new(*pos, format!("unknown formula constructor `{other}`"))),
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    formula_from_sexp(&read_one(text)?)
}

pub fn render_formula(f: &Formula) -> String {
    f.render()
}
