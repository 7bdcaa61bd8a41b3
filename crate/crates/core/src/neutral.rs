//! Neutral webs, neutral restriction and the support-closure operator.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::multiset::{for_each_bag_of_size, Bag};
use crate::relsem::Interp;
use crate::space::{Engine, ExpFlavor, KSet, Polarity, SemanticsConfig, Space, Verdict, VerdictError};
use crate::space::polarity;
use crate::syntax::{in_web, Point};
use crate::verify::{clique_unchecked, CliqueStatus};

/// Outcome of a semi-decided membership question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Judgement {
    Holds,
    Fails,
    /// Holds for every cardinality up to the given bound; not checked beyond.
    HoldsUpTo(usize),
}

impl Judgement {
    pub fn holds(self) -> bool {
        self != Judgement::Fails
    }

    pub fn from_bool(b: bool) -> Judgement {
        if b {
            Judgement::Holds
        } else {
            Judgement::Fails
        }
    }

    pub fn and(self, other: Judgement) -> Judgement {
        match (self, other) {
            (Judgement::Fails, _) | (_, Judgement::Fails) => Judgement::Fails,
            (Judgement::HoldsUpTo(a), Judgement::HoldsUpTo(b)) => Judgement::HoldsUpTo(a.min(b)),
            (Judgement::HoldsUpTo(a), _) | (_, Judgement::HoldsUpTo(a)) => Judgement::HoldsUpTo(a),
            _ => Judgement::Holds,
        }
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, Judgement::HoldsUpTo(_))
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgement::Holds => f.write_str("yes"),
            Judgement::Fails => f.write_str("no"),
            Judgement::HoldsUpTo(b) => write!(f, "yes (up to cardinality {b})"),
        }
    }
}

/// Membership of `p` in the neutral web of `space`, computed structurally:
/// componentwise through the additive and multiplicative connectives, and for
/// exponentials by neutrality of the elements plus cliquehood of the support.
///
/// For the relational engine every point counts as neutral; the bipartite
/// engine has no neutral points. Under the set-based uniform flavor, bags at
/// exponential positions must moreover be sets.
pub fn neutral_member(cfg: &SemanticsConfig, space: &Space, p: &Point) -> Result<Judgement, VerdictError> {
    if !in_web(space, p) {
        return Err(VerdictError::OutsideWeb(p.render()));
    }
    match cfg.engine {
        Engine::Relational => Ok(Judgement::Holds),
        Engine::Bipartite => Ok(Judgement::Fails),
        _ => structural(cfg, space, p),
    }
}

fn structural(cfg: &SemanticsConfig, space: &Space, p: &Point) -> Result<Judgement, VerdictError> {
    match (space, p) {
        (Space::One | Space::Bot, Point::Star) => Ok(Judgement::Holds),
        (Space::Plus(a, _) | Space::With(a, _), Point::Inl(x)) => structural(cfg, a, x),
        (Space::Plus(_, b) | Space::With(_, b), Point::Inr(x)) => structural(cfg, b, x),
        (Space::Tensor(a, b) | Space::Par(a, b), Point::Pair(x, y)) => {
            let ja = structural(cfg, a, x)?;
            if ja == Judgement::Fails {
                return Ok(ja);
            }
            Ok(ja.and(structural(cfg, b, y)?))
        }
        (Space::OfCourse(a), Point::Bag(m)) => bag_neutral(cfg, a, false, m),
        (Space::WhyNot(a), Point::Bag(m)) => bag_neutral(cfg, a, true, m),
        (Space::Atom { table, .. }, p) => {
            let nu = cfg.non_uniform();
            match &cfg.engine {
                Engine::SetEngine => {
                    let x: BTreeSet<Point> = [p.clone()].into_iter().collect();
                    let (v, exhaustive) = support_closure_verdict(|b| table.lookup(b), &x, &table.k, table.cap)?;
                    Ok(match (v == Verdict::Neutral, exhaustive) {
                        (false, _) => Judgement::Fails,
                        (true, true) => Judgement::Holds,
                        (true, false) => Judgement::HoldsUpTo(table.cap),
                    })
                }
                _ => {
                    let k = nu.k().cloned().unwrap_or(KSet::PairOnly);
                    for n in k.members_up_to(table.cap) {
                        if table.lookup(&Bag::repeat(p.clone(), n))? != Verdict::Neutral {
                            return Ok(Judgement::Fails);
                        }
                    }
                    Ok(if k.covered_by(table.cap) { Judgement::Holds } else { Judgement::HoldsUpTo(table.cap) })
                }
            }
        }
        (_, p) => Err(VerdictError::OutsideWeb(p.render())),
    }
}

fn bag_neutral(cfg: &SemanticsConfig, body: &Space, why_not: bool, m: &Bag<Point>) -> Result<Judgement, VerdictError> {
    if cfg.exponential == ExpFlavor::UniformSet && !m.is_set() {
        return Ok(Judgement::Fails);
    }
    let mut j = Judgement::Holds;
    for a in m.distinct() {
        j = j.and(structural(cfg, body, a)?);
        if j == Judgement::Fails {
            return Ok(j);
        }
    }
    let support = m.support();
    let report = if why_not {
        clique_unchecked(&cfg.non_uniform(), &body.dual(), &support, cfg.card_bound)?
    } else {
        clique_unchecked(&cfg.non_uniform(), body, &support, cfg.card_bound)?
    };
    Ok(j.and(match report.status {
        CliqueStatus::Clique => Judgement::Holds,
        CliqueStatus::CliqueUpToBound(b) => Judgement::HoldsUpTo(b),
        CliqueStatus::NotClique { .. } => Judgement::Fails,
    }))
}

/// Membership in the web of the uniform space of `cfg`: the neutral web for
/// the coherent and hypercoherent flavors, the positive-exponential web for
/// the uniform bipartite flavor, the whole web otherwise.
pub fn uniform_member(cfg: &SemanticsConfig, space: &Space, p: &Point) -> Result<Judgement, VerdictError> {
    if !in_web(space, p) {
        return Ok(Judgement::Fails);
    }
    match cfg.exponential {
        ExpFlavor::UniformMultiset | ExpFlavor::UniformSet => neutral_member(cfg, space, p),
        ExpFlavor::BipartitePos => Ok(Judgement::from_bool(pos_web_member(space, p)?)),
        _ => Ok(Judgement::Holds),
    }
}

/// Web of the uniform bipartite semantics: `!A` bags hold positive points of
/// `A`, `?A` bags negative ones.
pub fn pos_web_member(space: &Space, p: &Point) -> Result<bool, VerdictError> {
    Ok(match (space, p) {
        (Space::One | Space::Bot, Point::Star) => true,
        (Space::Plus(a, _) | Space::With(a, _), Point::Inl(x)) => pos_web_member(a, x)?,
        (Space::Plus(_, b) | Space::With(_, b), Point::Inr(x)) => pos_web_member(b, x)?,
        (Space::Tensor(a, b) | Space::Par(a, b), Point::Pair(x, y)) => pos_web_member(a, x)? && pos_web_member(b, y)?,
        (Space::OfCourse(a) | Space::WhyNot(a), Point::Bag(m)) => {
            let want = if matches!(space, Space::OfCourse(_)) { Polarity::Positive } else { Polarity::Negative };
            for x in m.distinct() {
                if !pos_web_member(a, x)? || polarity(a, x)? != want {
                    return Ok(false);
                }
            }
            true
        }
        _ => false,
    })
}

/// Keeps the points of `x` lying in the neutral web. The flag reports whether
/// some membership was only established up to the cardinality bound.
pub fn restrict_clique(
    cfg: &SemanticsConfig,
    space: &Space,
    x: &BTreeSet<Point>,
) -> Result<(BTreeSet<Point>, bool), VerdictError> {
    let mut out = BTreeSet::new();
    let mut bounded = false;
    for p in x {
        let j = neutral_member(cfg, space, p)?;
        bounded |= j.is_bounded();
        if j.holds() {
            out.insert(p.clone());
        }
    }
    Ok((out, bounded))
}

/// Neutral restriction of an interpretation: a tuple survives when each
/// component is neutral in its formula.
pub fn restrict_interp(cfg: &SemanticsConfig, interp: &Interp) -> Result<Interp, VerdictError> {
    let spaces: Vec<Space> = interp.sequent.iter().map(Space::from).collect();
    let mut tuples = BTreeSet::new();
    'tuples: for t in &interp.tuples {
        for (s, p) in spaces.iter().zip(t) {
            if !neutral_member(cfg, s, p)?.holds() {
                continue 'tuples;
            }
        }
        tuples.insert(t.clone());
    }
    Ok(Interp { sequent: interp.sequent.clone(), tuples, bound: interp.bound })
}

/// The support-closure operator S: the verdict of the set `x` is neutral when
/// every bag of support exactly `x` is neutral, strictly coherent when every
/// such bag is coherent, strictly incoherent otherwise. Bags have cardinality
/// in `k` and at most `cap`; the flag is true when that covers all of `k`.
pub fn support_closure_verdict<F>(
    mut oracle: F,
    x: &BTreeSet<Point>,
    k: &KSet,
    cap: usize,
) -> Result<(Verdict, bool), VerdictError>
where
    F: FnMut(&Bag<Point>) -> Result<Verdict, VerdictError>,
{
    if x.is_empty() {
        return Err(VerdictError::EmptyInput);
    }
    let elems: Vec<Point> = x.iter().cloned().collect();
    let base: Bag<Point> = elems.iter().cloned().collect();
    let mut all_neutral = true;
    let mut all_coherent = true;
    let mut seen = 0usize;
    let mut err = None;
    for n in k.members_up_to(cap) {
        if n < elems.len() {
            continue;
        }
        let _ = for_each_bag_of_size(&elems, n - elems.len(), &mut |extra| {
            seen += 1;
            match oracle(&base.sum(extra)) {
                Ok(v) => {
                    all_neutral &= v == Verdict::Neutral;
                    all_coherent &= v.is_coherent();
                    if all_coherent {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(())
                    }
                }
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        if err.is_some() || !all_coherent {
            break;
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    if seen == 0 {
        return Err(VerdictError::MissingEntry(format!("no bag of support {} below cap {cap}", Point::Bag(base).render())));
    }
    let v = if !all_coherent {
        Verdict::StrictIncoherent
    } else if all_neutral {
        Verdict::Neutral
    } else {
        Verdict::StrictCoherent
    };
    Ok((v, k.covered_by(cap)))
}

/// [`support_closure_verdict`] with a multiset-engine space as oracle.
pub fn support_closure_in(
    cfg: &SemanticsConfig,
    space: &Space,
    x: &BTreeSet<Point>,
    cap: usize,
) -> Result<(Verdict, bool), VerdictError> {
    let k = cfg.k().cloned().ok_or(VerdictError::NoVerdicts)?;
    support_closure_verdict(|b| crate::space::verdict_unchecked(cfg, space, b), x, &k, cap)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::space::TableSpace;
    use crate::syntax::Formula;

    fn cfg(k: KSet) -> SemanticsConfig {
        SemanticsConfig::multiset(k, ExpFlavor::CoFree).unwrap().with_card_bound(4)
    }

    #[test]
    fn bool_bags() {
        let s = Space::from(Formula::of_course(Formula::bool()));
        let c = cfg(KSet::PairOnly);
        assert!(!neutral_member(&c, &s, &Point::bag([Point::v(), Point::f()])).unwrap().holds());
        assert_eq!(neutral_member(&c, &s, &Point::bag([Point::v(), Point::v()])).unwrap(), Judgement::Holds);
        let all = cfg(KSet::AllGe2);
        assert_eq!(
            neutral_member(&all, &s, &Point::bag([Point::v()])).unwrap(),
            Judgement::HoldsUpTo(4)
        );
    }

    #[test]
    fn g_bag_abc_depends_on_k() {
        let abc = Point::bag([Point::label("a"), Point::label("b"), Point::label("c")]);
        let g2 = Arc::new(TableSpace::g(KSet::PairOnly, 2));
        let s2 = Space::of_course(Space::atom(g2));
        assert!(neutral_member(&cfg(KSet::PairOnly), &s2, &abc).unwrap().holds());
        let k23 = KSet::finite([2, 3]).unwrap();
        let g3 = Arc::new(TableSpace::g(k23.clone(), 3));
        let s3 = Space::of_course(Space::atom(g3));
        assert!(!neutral_member(&cfg(k23), &s3, &abc).unwrap().holds());
    }

    #[test]
    fn relational_and_bipartite() {
        let s = Space::from(Formula::bool());
        assert!(neutral_member(&SemanticsConfig::relational(), &s, &Point::v()).unwrap().holds());
        assert!(!neutral_member(&SemanticsConfig::bipartite(false), &s, &Point::v()).unwrap().holds());
        assert!(neutral_member(&SemanticsConfig::relational(), &s, &Point::Star).is_err());
    }

    #[test]
    fn support_closure_on_g() {
        let g = TableSpace::g(KSet::AllGe2, 5);
        let x: BTreeSet<Point> = [Point::label("a"), Point::label("b")].into_iter().collect();
        let (v, exhaustive) = support_closure_verdict(|b| g.lookup(b), &x, &g.k, g.cap).unwrap();
        assert_eq!(v, Verdict::StrictCoherent);
        assert!(!exhaustive);
        let one: BTreeSet<Point> = [Point::label("c")].into_iter().collect();
        assert_eq!(support_closure_verdict(|b| g.lookup(b), &one, &g.k, g.cap).unwrap().0, Verdict::Neutral);
    }

    #[test]
    fn pos_web() {
        let s = Space::from(Formula::why_not(Formula::One));
        assert!(pos_web_member(&s, &Point::empty_bag()).unwrap());
        assert!(!pos_web_member(&s, &Point::bag([Point::Star])).unwrap());
        let t = Space::from(Formula::of_course(Formula::One));
        assert!(pos_web_member(&t, &Point::bag([Point::Star, Point::Star])).unwrap());
    }
}
