use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::neutral::{neutral_member, Judgement};
use crate::relsem::{interpret, ExpPolicy, InterpError};
use crate::space::{SemanticsConfig, Space, VerdictError};
use crate::syntax::{render_sequent, Formula, Point, Proof};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteractError {
    #[error("{side} proof must conclude a single formula, found {found}")]
    NotSingle { side: &'static str, found: String },
    #[error("conclusions {0} and {1} are not dual")]
    NotDual(String, String),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Verdict(#[from] VerdictError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    GiveUp(BTreeSet<Point>),
    Divergence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractReport {
    pub formula: Formula,
    pub outcome: Outcome,
    /// Whether some proof uses the sum rule (determinism is then not expected).
    pub uses_sum: bool,
    /// Neutrality of each result point in the conclusion of the first proof.
    pub neutral: Vec<(Point, Judgement)>,
}

impl InteractReport {
    pub fn points(&self) -> usize {
        match &self.outcome {
            Outcome::GiveUp(p) => p.len(),
            Outcome::Divergence => 0,
        }
    }

    /// At most one point, and every point neutral, unless sum was used.
    pub fn deterministic(&self) -> bool {
        self.uses_sum || (self.points() <= 1 && self.neutral.iter().all(|(_, j)| j.holds()))
    }
}

impl fmt::Display for InteractReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Divergence => write!(f, "divergence"),
            Outcome::GiveUp(ps) => {
                let pts: Vec<String> = ps.iter().map(Point::render).collect();
                write!(f, "give-up {}", pts.join(" "))
            }
        }
    }
}

fn single(p: &crate::syntax::Derivation, side: &'static str) -> Result<Formula, InteractError> {
    match p.conclusion.as_slice() {
        [a] => Ok(a.clone()),
        other => Err(InteractError::NotSingle { side, found: render_sequent(other) }),
    }
}

/// Interaction of a proof of `⊢A` with a proof of `⊢A⊥`: the intersection of
/// their interpretations.
pub fn interact(p1: &Proof, p2: &Proof, cfg: &SemanticsConfig, bound: usize) -> Result<InteractReport, InteractError> {
    let d1 = crate::syntax::check_proof(p1).map_err(InterpError::from)?;
    let d2 = crate::syntax::check_proof(p2).map_err(InterpError::from)?;
    let a = single(&d1, "first")?;
    let b = single(&d2, "second")?;
    if a.dual() != b {
        return Err(InteractError::NotDual(a.to_string(), b.to_string()));
    }
    let policy = ExpPolicy::for_config(cfg);
    let i1 = interpret(p1, &policy, bound)?;
    let i2 = interpret(p2, &policy, bound)?;
    let points: BTreeSet<Point> = i1.tuples.intersection(&i2.tuples).map(|t| t[0].clone()).collect();
    let space = Space::from(&a);
    let mut neutral = Vec::new();
    for p in &points {
        neutral.push((p.clone(), neutral_member(cfg, &space, p)?));
    }
    let outcome = if points.is_empty() { Outcome::Divergence } else { Outcome::GiveUp(points) };
    Ok(InteractReport { formula: a, outcome, uses_sum: p1.uses_sum() || p2.uses_sum(), neutral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{ExpFlavor, KSet};
    use crate::syntax::parse_proof;

    fn run(a: &str, b: &str) -> InteractReport {
        let cfg = SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::CoFree).unwrap();
        interact(&parse_proof(a).unwrap(), &parse_proof(b).unwrap(), &cfg, 8).unwrap()
    }

    #[test]
    fn give_up_and_divergence() {
        let r = run("(one)", "(bot (giveup))");
        assert_eq!(r.outcome, Outcome::GiveUp([Point::Star].into_iter().collect()));
        assert!(r.deterministic());
        assert_eq!(run("(one)", "(diverge bot)").outcome, Outcome::Divergence);
    }

    #[test]
    fn sum_loses_determinism() {
        let r = run("(sum (plus1 (one) 1) (plus2 (one) 1))", "(with (bot (giveup)) (bot (giveup)))");
        assert_eq!(r.points(), 2);
        assert!(r.uses_sum);
    }

    #[test]
    fn non_dual_is_rejected() {
        let cfg = SemanticsConfig::relational();
        let e = interact(&parse_proof("(one)").unwrap(), &parse_proof("(one)").unwrap(), &cfg, 4);
        assert!(matches!(e, Err(InteractError::NotDual(..))));
    }
}
