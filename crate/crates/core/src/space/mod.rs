//! Coherence spaces: verdicts, K sets, semantics configurations, space
//! descriptions and the verdict engines.

mod engine;
mod table;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multiset::BudgetExceeded;
use crate::syntax::{Formula, HasWeb, WebShape};

pub use engine::{polarity, set_verdict, verdict, verdict_unchecked, Polarity};
pub use table::{parse_table_space, TableError, TableSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    StrictCoherent,
    Neutral,
    StrictIncoherent,
}

impl Verdict {
    /// The verdict in the dual space.
    pub fn mirror(self) -> Verdict {
        match self {
            Verdict::StrictCoherent => Verdict::StrictIncoherent,
            Verdict::Neutral => Verdict::Neutral,
            Verdict::StrictIncoherent => Verdict::StrictCoherent,
        }
    }

    pub fn is_coherent(self) -> bool {
        self != Verdict::StrictIncoherent
    }

    pub fn is_incoherent(self) -> bool {
        self != Verdict::StrictCoherent
    }

    pub fn word(self) -> &'static str {
        match self {
            Verdict::StrictCoherent => "strict-coherent",
            Verdict::Neutral => "neutral",
            Verdict::StrictIncoherent => "strict-incoherent",
        }
    }

    /// Accepts the spellings used by table files and by [`Verdict::word`].
    pub fn from_word(w: &str) -> Option<Verdict> {
        match w {
            "neutral" => Some(Verdict::Neutral),
            "coherent" | "coherent-strict" | "strict-coherent" => Some(Verdict::StrictCoherent),
            "incoherent" | "incoherent-strict" | "strict-incoherent" => Some(Verdict::StrictIncoherent),
            _ => None,
        }
    }

    /// Tensor of two verdicts on the projections of one multiset.
    pub fn tensor(a: Verdict, b: Verdict) -> Verdict {
        use Verdict::*;
        match (a, b) {
            (Neutral, Neutral) => Neutral,
            (StrictIncoherent, _) | (_, StrictIncoherent) => StrictIncoherent,
            _ => StrictCoherent,
        }
    }

    pub fn par(a: Verdict, b: Verdict) -> Verdict {
        Verdict::tensor(a.mirror(), b.mirror()).mirror()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

/// The set of multiset cardinalities on which coherence is observed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KSet {
    PairOnly,
    AllGe2,
    Finite(BTreeSet<usize>),
}

impl KSet {
    pub fn finite<I: IntoIterator<Item = usize>>(ks: I) -> Result<KSet, String> {
        let set: BTreeSet<usize> = ks.into_iter().collect();
        if let Some(bad) = set.iter().find(|&&k| k < 2) {
            return Err(format!("K members must be at least 2, found {bad}"));
        }
        if set.is_empty() {
            return Err("K must not be empty".into());
        }
        Ok(KSet::Finite(set))
    }

    pub fn contains(&self, k: usize) -> bool {
        match self {
            KSet::PairOnly => k == 2,
            KSet::AllGe2 => k >= 2,
            KSet::Finite(s) => s.contains(&k),
        }
    }

    pub fn members_up_to(&self, cap: usize) -> Vec<usize> {
        match self {
            KSet::PairOnly => (2..=cap.min(2)).collect(),
            KSet::AllGe2 => (2..=cap).collect(),
            KSet::Finite(s) => s.iter().copied().filter(|&k| k <= cap).collect(),
        }
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        match self {
            KSet::PairOnly => Some(2),
            KSet::AllGe2 => None,
            KSet::Finite(s) => s.iter().next_back().copied(),
        }
    }

    /// True when every member is at most `cap`, so that enumerating up to
    /// `cap` is exhaustive.
    pub fn covered_by(&self, cap: usize) -> bool {
        self.max().is_some_and(|m| m <= cap)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSet::PairOnly => f.write_str("pair"),
            KSet::AllGe2 => f.write_str("all"),
            KSet::Finite(s) => {
                let parts: Vec<String> = s.iter().map(usize::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for KSet {
    type Err = String;

    /// `pair`, `all`, `2,3` or `set:2,3`.
    fn from_str(s: &str) -> Result<KSet, String> {
        let s = s.trim();
        match s {
            "pair" => Ok(KSet::PairOnly),
            "all" => Ok(KSet::AllGe2),
            _ => {
                let list = s.strip_prefix("set:").unwrap_or(s);
                let ks = list
                    .split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad K member `{x}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                KSet::finite(ks)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    Relational,
    Bipartite,
    Multiset(KSet),
    SetEngine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExpFlavor {
    CoFree,
    Indexed,
    UniformMultiset,
    UniformSet,
    NonUniformHyper,
    BipartiteStd,
    BipartitePos,
}

impl ExpFlavor {
    pub fn is_uniform(self) -> bool {
        matches!(self, ExpFlavor::UniformMultiset | ExpFlavor::UniformSet | ExpFlavor::BipartitePos)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("exponential {0:?} cannot be used with engine {1}")]
    Mismatch(ExpFlavor, String),
    #[error("cardinality bound must be at least 2")]
    CardBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemanticsConfig {
    pub engine: Engine,
    pub exponential: ExpFlavor,
    /// Largest multiset cardinality examined by semi-decided clique checks.
    pub card_bound: usize,
    /// Step budget for column decomposition searches.
    pub budget: Option<usize>,
}

impl SemanticsConfig {
    pub fn new(engine: Engine, exponential: ExpFlavor) -> Result<SemanticsConfig, ConfigError> {
        let cfg = SemanticsConfig { engine, exponential, card_bound: 6, budget: Some(1_000_000) };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn relational() -> SemanticsConfig {
        SemanticsConfig::new(Engine::Relational, ExpFlavor::CoFree).expect("valid")
    }

    pub fn multiset(k: KSet, exponential: ExpFlavor) -> Result<SemanticsConfig, ConfigError> {
        SemanticsConfig::new(Engine::Multiset(k), exponential)
    }

    pub fn hyper(exponential: ExpFlavor) -> Result<SemanticsConfig, ConfigError> {
        SemanticsConfig::new(Engine::SetEngine, exponential)
    }

    pub fn bipartite(uniform: bool) -> SemanticsConfig {
        let e = if uniform { ExpFlavor::BipartitePos } else { ExpFlavor::BipartiteStd };
        SemanticsConfig::new(Engine::Bipartite, e).expect("valid")
    }

    pub fn with_card_bound(mut self, n: usize) -> SemanticsConfig {
        self.card_bound = n;
        self
    }

    pub fn with_budget(mut self, b: Option<usize>) -> SemanticsConfig {
        self.budget = b;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        use ExpFlavor::*;
        let ok = match &self.engine {
            Engine::Relational => self.exponential == CoFree,
            Engine::Bipartite => matches!(self.exponential, BipartiteStd | BipartitePos),
            Engine::Multiset(_) => matches!(self.exponential, CoFree | Indexed | UniformMultiset | UniformSet),
            Engine::SetEngine => matches!(self.exponential, UniformMultiset | UniformSet | NonUniformHyper),
        };
        if !ok {
            return Err(ConfigError::Mismatch(self.exponential, self.engine_name()));
        }
        if self.card_bound < 2 {
            return Err(ConfigError::CardBound);
        }
        Ok(())
    }

    pub fn engine_name(&self) -> String {
        match &self.engine {
            Engine::Relational => "relational".into(),
            Engine::Bipartite => "bipartite".into(),
            Engine::Multiset(k) => format!("multiset(K={k})"),
            Engine::SetEngine => "set".into(),
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.exponential.is_uniform()
    }

    /// The same semantics with uniformity dropped: the configuration whose
    /// neutral restriction gives this one.
    pub fn non_uniform(&self) -> SemanticsConfig {
        let exponential = match (&self.engine, self.exponential) {
            (Engine::Multiset(_), ExpFlavor::UniformMultiset | ExpFlavor::UniformSet) => ExpFlavor::CoFree,
            (Engine::SetEngine, ExpFlavor::UniformMultiset | ExpFlavor::UniformSet) => ExpFlavor::NonUniformHyper,
            (Engine::Bipartite, ExpFlavor::BipartitePos) => ExpFlavor::BipartiteStd,
            (_, e) => e,
        };
        SemanticsConfig { exponential, ..self.clone() }
    }

    pub fn k(&self) -> Option<&KSet> {
        match &self.engine {
            Engine::Multiset(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for SemanticsConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{:?}", self.engine_name(), self.exponential)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerdictError {
    #[error("point {0} is outside the web")]
    OutsideWeb(String),
    #[error("the web is empty, no multiset can be judged")]
    EmptyWeb,
    #[error("cardinality {0} is not in K")]
    CardinalityNotInK(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("the relational semantics has no verdicts")]
    NoVerdicts,
    #[error("bipartite verdicts are defined on single points, got {0} points")]
    NotSinglePoint(usize),
    #[error("table has no entry for {0}")]
    MissingEntry(String),
    #[error("table spaces are not available in the {0} engine")]
    TableUnsupported(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// A space description: formula connectives over optional table atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    One,
    Bot,
    Zero,
    Top,
    Tensor(Box<Space>, Box<Space>),
    Par(Box<Space>, Box<Space>),
    With(Box<Space>, Box<Space>),
    Plus(Box<Space>, Box<Space>),
    OfCourse(Box<Space>),
    WhyNot(Box<Space>),
    Atom { table: Arc<TableSpace>, dual: bool },
}

impl Space {
    pub fn atom(table: Arc<TableSpace>) -> Space {
        Space::Atom { table, dual: false }
    }

    pub fn tensor(a: Space, b: Space) -> Space {
        Space::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Space, b: Space) -> Space {
        Space::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Space, b: Space) -> Space {
        Space::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Space, b: Space) -> Space {
        Space::Plus(Box::new(a), Box::new(b))
    }

    pub fn of_course(a: Space) -> Space {
        Space::OfCourse(Box::new(a))
    }

    pub fn why_not(a: Space) -> Space {
        Space::WhyNot(Box::new(a))
    }

    /// `a ⊸ b`.
    pub fn lolli(a: Space, b: Space) -> Space {
        Space::par(a.dual(), b)
    }

    pub fn dual(&self) -> Space {
        match self {
            Space::One => Space::Bot,
            Space::Bot => Space::One,
            Space::Zero => Space::Top,
            Space::Top => Space::Zero,
            Space::Tensor(a, b) => Space::par(a.dual(), b.dual()),
            Space::Par(a, b) => Space::tensor(a.dual(), b.dual()),
            Space::With(a, b) => Space::plus(a.dual(), b.dual()),
            Space::Plus(a, b) => Space::with(a.dual(), b.dual()),
            Space::OfCourse(a) => Space::why_not(a.dual()),
            Space::WhyNot(a) => Space::of_course(a.dual()),
            Space::Atom { table, dual } => Space::Atom { table: table.clone(), dual: !dual },
        }
    }

    pub fn has_atoms(&self) -> bool {
        match self {
            Space::Atom { .. } => true,
            Space::One | Space::Bot | Space::Zero | Space::Top => false,
            Space::Tensor(a, b) | Space::Par(a, b) | Space::With(a, b) | Space::Plus(a, b) => {
                a.has_atoms() || b.has_atoms()
            }
            Space::OfCourse(a) | Space::WhyNot(a) => a.has_atoms(),
        }
    }
}

impl From<&Formula> for Space {
    fn from(f: &Formula) -> Space {
        match f {
            Formula::One => Space::One,
            Formula::Bot => Space::Bot,
            Formula::Zero => Space::Zero,
            Formula::Top => Space::Top,
            Formula::Tensor(a, b) => Space::tensor(a.as_ref().into(), b.as_ref().into()),
            Formula::Par(a, b) => Space::par(a.as_ref().into(), b.as_ref().into()),
            Formula::With(a, b) => Space::with(a.as_ref().into(), b.as_ref().into()),
            Formula::Plus(a, b) => Space::plus(a.as_ref().into(), b.as_ref().into()),
            Formula::OfCourse(a) => Space::of_course(a.as_ref().into()),
            Formula::WhyNot(a) => Space::why_not(a.as_ref().into()),
        }
    }
}

impl From<Formula> for Space {
    fn from(f: Formula) -> Space {
        Space::from(&f)
    }
}

impl HasWeb for Space {
    fn web_shape(&self) -> WebShape<'_, Self> {
        match self {
            Space::One | Space::Bot => WebShape::Unit,
            Space::Zero | Space::Top => WebShape::Empty,
            Space::Plus(a, b) | Space::With(a, b) => WebShape::Sum(a, b),
            Space::Tensor(a, b) | Space::Par(a, b) => WebShape::Product(a, b),
            Space::OfCourse(a) | Space::WhyNot(a) => WebShape::Bags(a),
            Space::Atom { table, .. } => WebShape::Labels(&table.web),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let operand = |f: &mut fmt::Formatter<'_>, x: &Space| match x {
            Space::Tensor(..) | Space::Par(..) | Space::With(..) | Space::Plus(..) => write!(f, "({x})"),
            _ => write!(f, "{x}"),
        };
        let bin = |f: &mut fmt::Formatter<'_>, a: &Space, op: &str, b: &Space| {
            operand(f, a)?;
            f.write_str(op)?;
            operand(f, b)
        };
        match self {
            Space::One => f.write_str("1"),
            Space::Bot => f.write_str("⊥"),
            Space::Zero => f.write_str("0"),
            Space::Top => f.write_str("⊤"),
            Space::Tensor(a, b) => bin(f, a, "⊗", b),
            Space::Par(a, b) => bin(f, a, "⅋", b),
            Space::With(a, b) => bin(f, a, "&", b),
            Space::Plus(a, b) => bin(f, a, "⊕", b),
            Space::OfCourse(a) => {
                f.write_str("!")?;
                operand(f, a)
            }
            Space::WhyNot(a) => {
                f.write_str("?")?;
                operand(f, a)
            }
            Space::Atom { table, dual } => {
                f.write_str(table.name.as_deref().unwrap_or("T"))?;
                if *dual {
                    f.write_str("⊥")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_is_involutive() {
        for v in [Verdict::StrictCoherent, Verdict::Neutral, Verdict::StrictIncoherent] {
            assert_eq!(v.mirror().mirror(), v);
            assert_eq!(Verdict::from_word(v.word()), Some(v));
        }
        assert_eq!(Verdict::Neutral.mirror(), Verdict::Neutral);
    }

    #[test]
    fn tensor_and_par_tables() {
        use Verdict::*;
        assert_eq!(Verdict::tensor(Neutral, Neutral), Neutral);
        assert_eq!(Verdict::tensor(Neutral, StrictCoherent), StrictCoherent);
        assert_eq!(Verdict::tensor(StrictCoherent, StrictIncoherent), StrictIncoherent);
        assert_eq!(Verdict::par(StrictCoherent, StrictIncoherent), StrictCoherent);
        assert_eq!(Verdict::par(Neutral, StrictIncoherent), StrictIncoherent);
    }

    #[test]
    fn kset_parsing_and_membership() {
        assert_eq!("pair".parse::<KSet>().unwrap(), KSet::PairOnly);
        assert_eq!("all".parse::<KSet>().unwrap(), KSet::AllGe2);
        let k: KSet = "set:2,3".parse().unwrap();
        assert!(k.contains(3) && !k.contains(4));
        assert!("1,2".parse::<KSet>().is_err());
        assert_eq!(KSet::AllGe2.members_up_to(4), vec![2, 3, 4]);
        assert_eq!(KSet::PairOnly.members_up_to(4), vec![2]);
        assert!(k.covered_by(3) && !KSet::AllGe2.covered_by(100));
    }

    #[test]
    fn config_validation() {
        assert!(SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::Indexed).is_ok());
        assert!(SemanticsConfig::hyper(ExpFlavor::Indexed).is_err());
        assert!(SemanticsConfig::new(Engine::Bipartite, ExpFlavor::CoFree).is_err());
        assert!(SemanticsConfig::new(Engine::Relational, ExpFlavor::UniformSet).is_err());
        let u = SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::UniformMultiset).unwrap();
        assert_eq!(u.non_uniform().exponential, ExpFlavor::CoFree);
    }

    #[test]
    fn space_duality_matches_formulas() {
        let f = Formula::of_course(Formula::with(Formula::Bot, Formula::One));
        assert_eq!(Space::from(&f.dual()), Space::from(&f).dual());
    }
}
