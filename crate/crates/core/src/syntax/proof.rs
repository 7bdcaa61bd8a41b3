use std::fmt;

use thiserror::Error;

use super::formula::{formula_from_sexp, Formula};
use super::sexpr::{read_one, Sexp, SyntaxError};

/// A sequent: an ordered list of formulas. Principal formulas sit at the end.
pub type Sequent = Vec<Formula>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax(Formula),
    Cut(Formula),
    One,
    Bot,
    /// The context of the conclusion, before the final `⊤`.
    Top(Vec<Formula>),
    With,
    Plus1(Formula),
    Plus2(Formula),
    Par,
    Tensor,
    Prom,
    Cont,
    /// Body `A` of the weakened formula `?A`.
    Weak(Formula),
    Der,
    /// Swaps position `i` (counted from 0) with the last position.
    Ex(usize),
    GiveUp,
    Diverge(Vec<Formula>),
    Sum,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Ax(_) => "ax",
            Rule::Cut(_) => "cut",
            Rule::One => "one",
            Rule::Bot => "bot",
            Rule::Top(_) => "top",
            Rule::With => "with",
            Rule::Plus1(_) => "plus1",
            Rule::Plus2(_) => "plus2",
            Rule::Par => "par",
            Rule::Tensor => "tensor",
            Rule::Prom => "prom",
            Rule::Cont => "cont",
            Rule::Weak(_) => "weak",
            Rule::Der => "der",
            Rule::Ex(_) => "ex",
            Rule::GiveUp => "giveup",
            Rule::Diverge(_) => "diverge",
            Rule::Sum => "sum",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Ax(_) | Rule::One | Rule::Top(_) | Rule::GiveUp | Rule::Diverge(_) => 0,
            Rule::Cut(_) | Rule::With | Rule::Tensor | Rule::Sum => 2,
            _ => 1,
        }
    }
}

/// An unchecked proof tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub rule: Rule,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn new(rule: Rule, premises: Vec<Proof>) -> Proof {
        assert_eq!(rule.arity(), premises.len(), "wrong number of premises for {}", rule.name());
        Proof { rule, premises }
    }

    pub fn leaf(rule: Rule) -> Proof {
        Proof::new(rule, Vec::new())
    }

    pub fn unary(rule: Rule, p: Proof) -> Proof {
        Proof::new(rule, vec![p])
    }

    pub fn binary(rule: Rule, p: Proof, q: Proof) -> Proof {
        Proof::new(rule, vec![p, q])
    }

    pub fn uses_sum(&self) -> bool {
        self.rule == Rule::Sum || self.premises.iter().any(Proof::uses_sum)
    }

    pub fn uses_cut(&self) -> bool {
        matches!(self.rule, Rule::Cut(_)) || self.premises.iter().any(Proof::uses_cut)
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = vec![self.rule.name().to_string()];
        let formulas = |fs: &[Formula]| fs.iter().map(Formula::render).collect::<Vec<_>>();
        match &self.rule {
            Rule::Ax(f) | Rule::Cut(f) => parts.push(f.render()),
            Rule::Ex(i) => parts.push(i.to_string()),
            Rule::Top(ctx) | Rule::Diverge(ctx) => parts.extend(formulas(ctx)),
            _ => {}
        }
        parts.extend(self.premises.iter().map(Proof::render));
        match &self.rule {
            Rule::Plus1(f) | Rule::Plus2(f) | Rule::Weak(f) => parts.push(f.render()),
            _ => {}
        }
        format!("({})", parts.join(" "))
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn proof_from_sexp(s: &Sexp) -> Result<Proof, SyntaxError> {
    let Some((head, args)) = s.as_call() else {
        return Err(SyntaxError::new(s.pos(), "expected a proof rule `(name ...)`"));
    };
    let pos = s.pos();
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(SyntaxError::new(pos, format!("`{head}` takes {n} argument(s), found {}", args.len())))
        }
    };
    let p = |i: usize| proof_from_sexp(&args[i]);
    let f = |i: usize| formula_from_sexp(&args[i]);
    let proof = match head {
        "ax" => {
            arity(1)?;
            Proof::leaf(Rule::Ax(f(0)?))
        }
        "cut" => {
            arity(3)?;
            Proof::binary(Rule::Cut(f(0)?), p(1)?, p(2)?)
        }
        "one" => {
            arity(0)?;
            Proof::leaf(Rule::One)
        }
        "giveup" => {
            arity(0)?;
            Proof::leaf(Rule::GiveUp)
        }
        "top" | "diverge" => {
            let ctx = args.iter().map(formula_from_sexp).collect::<Result<Vec<_>, _>>()?;
            Proof::leaf(if head == "top" { Rule::Top(ctx) } else { Rule::Diverge(ctx) })
        }
        "bot" | "par" | "prom" | "cont" | "der" => {
            arity(1)?;
            let rule = match head {
                "bot" => Rule::Bot,
                "par" => Rule::Par,
                "prom" => Rule::Prom,
                "cont" => Rule::Cont,
                _ => Rule::Der,
            };
            Proof::unary(rule, p(0)?)
        }
        "with" | "tensor" | "sum" => {
            arity(2)?;
            let rule = match head {
                "with" => Rule::With,
                "tensor" => Rule::Tensor,
                _ => Rule::Sum,
            };
            Proof::binary(rule, p(0)?, p(1)?)
        }
        "plus1" | "plus2" | "weak" => {
            arity(2)?;
            let g = f(1)?;
            let rule = match head {
                "plus1" => Rule::Plus1(g),
                "plus2" => Rule::Plus2(g),
                _ => Rule::Weak(g),
            };
            Proof::unary(rule, p(0)?)
        }
        "ex" => {
            arity(2)?;
            let i = match &args[0] {
                Sexp::Atom(a, ap) => {
                    a.parse::<usize>().map_err(|_| SyntaxError::new(*ap, "ex expects a position"))?
                }
                other => return Err(SyntaxError::new(other.pos(), "ex expects a position")),
            };
            Proof::unary(Rule::Ex(i), p(1)?)
        }
        other => return Err(SyntaxError::new(pos, format!("unknown rule `{other}`"))),
    };
    Ok(proof)
}

pub fn parse_proof(text: &str) -> Result<Proof, SyntaxError> {
    proof_from_sexp(&read_one(text)?)
}

pub fn render_proof(p: &Proof) -> String {
    p.render()
}

/// A checked proof: every node carries its conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub premises: Vec<Derivation>,
    pub conclusion: Sequent,
}

impl Derivation {
    pub fn uses_sum(&self) -> bool {
        self.rule == Rule::Sum || self.premises.iter().any(Derivation::uses_sum)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule} at {}: {message}", path_string(.path))]
pub struct CheckError {
    pub rule: &'static str,
    /// Premise indices from the root down to the offending node.
    pub path: Vec<usize>,
    pub message: String,
}

fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

pub fn render_sequent(s: &[Formula]) -> String {
    let parts: Vec<String> = s.iter().map(Formula::to_string).collect();
    format!("⊢ {}", parts.join(", "))
}

pub fn check_proof(p: &Proof) -> Result<Derivation, CheckError> {
    check_at(p, &mut Vec::new())
}

fn check_at(p: &Proof, path: &mut Vec<usize>) -> Result<Derivation, CheckError> {
    let mut premises = Vec::with_capacity(p.premises.len());
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        premises.push(check_at(q, path)?);
        path.pop();
    }
    let fail = |message: String| CheckError { rule: p.rule.name(), path: path.clone(), message };
    if premises.len() != p.rule.arity() {
        return Err(fail(format!("expects {} premise(s), found {}", p.rule.arity(), premises.len())));
    }
    let last_of = |s: &Sequent, what: &str| -> Result<(Sequent, Formula), CheckError> {
        let mut ctx = s.clone();
        match ctx.pop() {
            Some(f) => Ok((ctx, f)),
            None => Err(fail(format!("{what} has an empty conclusion"))),
        }
    };
    let conclusion: Sequent = match &p.rule {
        Rule::Ax(f) => vec![f.clone(), f.dual()],
        Rule::Cut(f) => {
            let (mut g, a) = last_of(&premises[0].conclusion, "left premise")?;
            let (d, b) = last_of(&premises[1].conclusion, "right premise")?;
            if a != *f {
                return Err(fail(format!("left premise ends with {a}, expected cut formula {f}")));
            }
            if b != f.dual() {
                return Err(fail(format!("right premise ends with {b}, expected {}", f.dual())));
            }
            g.extend(d);
            g
        }
        Rule::One => vec![Formula::One],
        Rule::Bot => {
            let mut g = premises[0].conclusion.clone();
            g.push(Formula::Bot);
            g
        }
        Rule::Top(ctx) => {
            let mut g = ctx.clone();
            g.push(Formula::Top);
            g
        }
        Rule::With => {
            let (g1, a) = last_of(&premises[0].conclusion, "left premise")?;
            let (g2, b) = last_of(&premises[1].conclusion, "right premise")?;
            if g1 != g2 {
                return Err(fail(format!(
                    "premise contexts differ: {} vs {}",
                    render_sequent(&g1),
                    render_sequent(&g2)
                )));
            }
            let mut g = g1;
            g.push(Formula::with(a, b));
            g
        }
        Rule::Plus1(other) | Rule::Plus2(other) => {
            let (mut g, a) = last_of(&premises[0].conclusion, "premise")?;
            g.push(if matches!(p.rule, Rule::Plus1(_)) {
                Formula::plus(a, other.clone())
            } else {
                Formula::plus(other.clone(), a)
            });
            g
        }
        Rule::Par => {
            let (g, b) = last_of(&premises[0].conclusion, "premise")?;
            let (mut g, a) = last_of(&g, "premise")?;
            g.push(Formula::par(a, b));
            g
        }
        Rule::Tensor => {
            let (mut g, a) = last_of(&premises[0].conclusion, "left premise")?;
            let (d, b) = last_of(&premises[1].conclusion, "right premise")?;
            g.extend(d);
            g.push(Formula::tensor(a, b));
            g
        }
        Rule::Prom => {
            let (mut g, a) = last_of(&premises[0].conclusion, "premise")?;
            if let Some(bad) = g.iter().find(|f| !f.is_why_not()) {
                return Err(fail(format!("context formula {bad} is not a ?-formula")));
            }
            g.push(Formula::of_course(a));
            g
        }
        Rule::Cont => {
            let (g, b) = last_of(&premises[0].conclusion, "premise")?;
            let (mut g, a) = last_of(&g, "premise")?;
            if a != b || !a.is_why_not() {
                return Err(fail(format!("expected two equal ?-formulas at the end, found {a} and {b}")));
            }
            g.push(a);
            g
        }
        Rule::Weak(body) => {
            let mut g = premises[0].conclusion.clone();
            g.push(Formula::why_not(body.clone()));
            g
        }
        Rule::Der => {
            let (mut g, a) = last_of(&premises[0].conclusion, "premise")?;
            g.push(Formula::why_not(a));
            g
        }
        Rule::Ex(i) => {
            let mut g = premises[0].conclusion.clone();
            if *i >= g.len() {
                return Err(fail(format!("position {i} out of range for a sequent of length {}", g.len())));
            }
            let last = g.len() - 1;
            g.swap(*i, last);
            g
        }
        Rule::GiveUp => Vec::new(),
        Rule::Diverge(ctx) => ctx.clone(),
        Rule::Sum => {
            if premises[0].conclusion != premises[1].conclusion {
                return Err(fail(format!(
                    "premise conclusions differ: {} vs {}",
                    render_sequent(&premises[0].conclusion),
                    render_sequent(&premises[1].conclusion)
                )));
            }
            premises[0].conclusion.clone()
        }
    };
    Ok(Derivation { rule: p.rule.clone(), premises, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concl(text: &str) -> Sequent {
        check_proof(&parse_proof(text).unwrap()).unwrap().conclusion
    }

    #[test]
    fn basic_conclusions() {
        assert_eq!(concl("(one)"), vec![Formula::One]);
        assert_eq!(
            concl("(der (ax 1))"),
            vec![Formula::One, Formula::why_not(Formula::Bot)]
        );
        assert_eq!(concl("(giveup)"), Vec::<Formula>::new());
        assert_eq!(concl("(top 1 bot)"), vec![Formula::One, Formula::Bot, Formula::Top]);
        assert_eq!(concl("(weak (one) bool)"), vec![Formula::One, Formula::why_not(Formula::bool())]);
    }

    #[test]
    fn exchange_swaps_with_last() {
        assert_eq!(concl("(ex 0 (ax bool))"), vec![Formula::bool().dual(), Formula::bool()]);
        assert!(check_proof(&parse_proof("(ex 2 (ax 1))").unwrap()).is_err());
    }

    #[test]
    fn rejects_bad_cut() {
        let p = parse_proof("(cut 1 (one) (one))").unwrap();
        let err = check_proof(&p).unwrap_err();
        assert_eq!(err.rule, "cut");
        assert!(check_proof(&parse_proof("(cut 1 (one) (bot (giveup)))").unwrap()).is_ok());
    }

    #[test]
    fn rejects_bad_promotion_and_contraction() {
        assert!(check_proof(&parse_proof("(prom (ax 1))").unwrap()).is_err());
        assert!(check_proof(&parse_proof("(cont (ax 1))").unwrap()).is_err());
        let e = check_proof(&parse_proof("(with (one) (bot (one)))").unwrap()).unwrap_err();
        assert_eq!(e.rule, "with");
    }

    #[test]
    fn error_paths_point_at_the_node() {
        let e = check_proof(&parse_proof("(tensor (one) (prom (ax 1)))").unwrap()).unwrap_err();
        assert_eq!(e.path, vec![1]);
        assert_eq!(e.rule, "prom");
    }

    #[test]
    fn render_round_trip() {
        for text in [
            "(cut (plus 1 1) (plus1 (one) 1) (with (bot (giveup)) (diverge bot)))",
            "(ex 0 (weak (top 1) bot))",
            "(sum (one) (one))",
        ] {
            let p = parse_proof(text).unwrap();
            assert_eq!(p.render(), text);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_proof("(tensor (one))").is_err());
        assert!(parse_proof("(ex x (one))").is_err());
        assert!(parse_proof("one").is_err());
        assert!(parse_proof("(frob)").is_err());
    }
}
