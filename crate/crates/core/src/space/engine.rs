use std::collections::BTreeSet;

use super::{Engine, ExpFlavor, SemanticsConfig, Space, TableSpace, Verdict, VerdictError};
use crate::expon;
use crate::multiset::Bag;
use crate::neutral::{support_closure_verdict, uniform_member};
use crate::syntax::{in_web, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

fn outside(p: &Point) -> VerdictError {
    VerdictError::OutsideWeb(p.render())
}

/// Verdict of the multiset `m` in `space`.
///
/// Checks web membership (the uniform web for uniform flavors) and the
/// cardinality constraint before evaluating. The set engine reads `m` as its
/// support; the bipartite engine expects a single distinct point.
pub fn verdict(cfg: &SemanticsConfig, space: &Space, m: &Bag<Point>) -> Result<Verdict, VerdictError> {
    if m.is_empty() {
        return Err(VerdictError::EmptyInput);
    }
    if let Engine::Multiset(k) = &cfg.engine {
        if !k.contains(m.len()) {
            return Err(VerdictError::CardinalityNotInK(m.len()));
        }
    }
    for p in m.distinct() {
        if !in_web(space, p) {
            return Err(outside(p));
        }
        if cfg.is_uniform() && !uniform_member(cfg, space, p)?.holds() {
            return Err(outside(p));
        }
    }
    verdict_unchecked(cfg, space, m)
}

/// [`verdict`] without the membership checks.
pub fn verdict_unchecked(cfg: &SemanticsConfig, space: &Space, m: &Bag<Point>) -> Result<Verdict, VerdictError> {
    match &cfg.engine {
        Engine::Relational => Err(VerdictError::NoVerdicts),
        Engine::Bipartite => {
            let Some(p) = m.only_element() else {
                return Err(VerdictError::NotSinglePoint(m.distinct_len()));
            };
            Ok(match polarity(space, p)? {
                Polarity::Positive => Verdict::StrictCoherent,
                Polarity::Negative => Verdict::StrictIncoherent,
            })
        }
        Engine::Multiset(_) => Multi { cfg }.verdict(space, m),
        Engine::SetEngine => set_verdict(cfg, space, &m.support()),
    }
}

/// Verdict of a nonempty set of points under the set engine.
pub fn set_verdict(cfg: &SemanticsConfig, space: &Space, x: &BTreeSet<Point>) -> Result<Verdict, VerdictError> {
    if x.is_empty() {
        return Err(VerdictError::EmptyInput);
    }
    Hyper { cfg }.verdict(space, x)
}

enum Side<T> {
    Left(T),
    Right(T),
    Mixed,
}

fn split_bag(m: &Bag<Point>) -> Result<Side<Bag<Point>>, VerdictError> {
    let mut left = Bag::new();
    let mut right = Bag::new();
    for (p, c) in m.counts() {
        match p {
            Point::Inl(x) => left.insert_many((**x).clone(), c),
            Point::Inr(x) => right.insert_many((**x).clone(), c),
            other => return Err(outside(other)),
        }
    }
    Ok(match (left.is_empty(), right.is_empty()) {
        (false, true) => Side::Left(left),
        (true, false) => Side::Right(right),
        _ => Side::Mixed,
    })
}

fn project_bag(m: &Bag<Point>) -> Result<(Bag<Point>, Bag<Point>), VerdictError> {
    let mut a = Bag::new();
    let mut b = Bag::new();
    for (p, c) in m.counts() {
        let (x, y) = p.as_pair().ok_or_else(|| outside(p))?;
        a.insert_many(x.clone(), c);
        b.insert_many(y.clone(), c);
    }
    Ok((a, b))
}

fn split_set(x: &BTreeSet<Point>) -> Result<Side<BTreeSet<Point>>, VerdictError> {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for p in x {
        match p {
            Point::Inl(y) => {
                left.insert((**y).clone());
            }
            Point::Inr(y) => {
                right.insert((**y).clone());
            }
            other => return Err(outside(other)),
        }
    }
    Ok(match (left.is_empty(), right.is_empty()) {
        (false, true) => Side::Left(left),
        (true, false) => Side::Right(right),
        _ => Side::Mixed,
    })
}

fn project_set(x: &BTreeSet<Point>) -> Result<(BTreeSet<Point>, BTreeSet<Point>), VerdictError> {
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for p in x {
        let (l, r) = p.as_pair().ok_or_else(|| outside(p))?;
        a.insert(l.clone());
        b.insert(r.clone());
    }
    Ok((a, b))
}

fn bags_of(m: &Bag<Point>) -> Result<Bag<Bag<Point>>, VerdictError> {
    let mut out = Bag::new();
    for (p, c) in m.counts() {
        out.insert_many(p.as_bag().ok_or_else(|| outside(p))?.clone(), c);
    }
    Ok(out)
}

struct Multi<'a> {
    cfg: &'a SemanticsConfig,
}

impl Multi<'_> {
    fn verdict(&self, s: &Space, m: &Bag<Point>) -> Result<Verdict, VerdictError> {
        match s {
            Space::One | Space::Bot => match m.distinct().find(|p| **p != Point::Star) {
                Some(p) => Err(outside(p)),
                None => Ok(Verdict::Neutral),
            },
            Space::Zero | Space::Top => Err(VerdictError::EmptyWeb),
            Space::Plus(a, b) | Space::With(a, b) => match split_bag(m)? {
                Side::Left(x) => self.verdict(a, &x),
                Side::Right(y) => self.verdict(b, &y),
                Side::Mixed if matches!(s, Space::Plus(..)) => Ok(Verdict::StrictIncoherent),
                Side::Mixed => Ok(Verdict::StrictCoherent),
            },
            Space::Tensor(a, b) | Space::Par(a, b) => {
                let (x, y) = project_bag(m)?;
                let va = self.verdict(a, &x)?;
                let vb = self.verdict(b, &y)?;
                Ok(if matches!(s, Space::Tensor(..)) { Verdict::tensor(va, vb) } else { Verdict::par(va, vb) })
            }
            Space::OfCourse(a) => self.bang(a, false, m),
            Space::WhyNot(a) => Ok(self.bang(a, true, m)?.mirror()),
            Space::Atom { table, dual } => {
                let v = table.lookup(m)?;
                Ok(if *dual { v.mirror() } else { v })
            }
        }
    }

    /// `!A` when `body_dual` is false, `!(A⊥)` otherwise.
    fn bang(&self, body: &Space, body_dual: bool, m: &Bag<Point>) -> Result<Verdict, VerdictError> {
        let mu = bags_of(m)?;
        let oracle = |b: &Bag<Point>| {
            let v = self.verdict(body, b)?;
            Ok(if body_dual { v.mirror() } else { v })
        };
        match self.cfg.exponential {
            ExpFlavor::Indexed => expon::indexed_verdict(oracle, &mu),
            _ => expon::cofree_verdict(oracle, &mu, self.cfg.budget),
        }
    }
}

struct Hyper<'a> {
    cfg: &'a SemanticsConfig,
}

impl Hyper<'_> {
    fn verdict(&self, s: &Space, x: &BTreeSet<Point>) -> Result<Verdict, VerdictError> {
        match s {
            Space::One | Space::Bot => match x.iter().find(|p| **p != Point::Star) {
                Some(p) => Err(outside(p)),
                None => Ok(Verdict::Neutral),
            },
            Space::Zero | Space::Top => Err(VerdictError::EmptyWeb),
            Space::Plus(a, b) | Space::With(a, b) => match split_set(x)? {
                Side::Left(l) => self.verdict(a, &l),
                Side::Right(r) => self.verdict(b, &r),
                Side::Mixed if matches!(s, Space::Plus(..)) => Ok(Verdict::StrictIncoherent),
                Side::Mixed => Ok(Verdict::StrictCoherent),
            },
            Space::Tensor(a, b) | Space::Par(a, b) => {
                let (l, r) = project_set(x)?;
                let va = self.verdict(a, &l)?;
                let vb = self.verdict(b, &r)?;
                Ok(if matches!(s, Space::Tensor(..)) { Verdict::tensor(va, vb) } else { Verdict::par(va, vb) })
            }
            Space::OfCourse(a) => self.bang(a, false, x),
            Space::WhyNot(a) => Ok(self.bang(a, true, x)?.mirror()),
            Space::Atom { table, dual } => {
                let v = table_set_verdict(table, x)?;
                Ok(if *dual { v.mirror() } else { v })
            }
        }
    }

    fn bang(&self, body: &Space, body_dual: bool, x: &BTreeSet<Point>) -> Result<Verdict, VerdictError> {
        let family: BTreeSet<Bag<Point>> = x
            .iter()
            .map(|p| p.as_bag().cloned().ok_or_else(|| outside(p)))
            .collect::<Result<_, _>>()?;
        let oracle = |s: &BTreeSet<Point>| {
            let v = self.verdict(body, s)?;
            Ok(if body_dual { v.mirror() } else { v })
        };
        match self.cfg.exponential {
            ExpFlavor::NonUniformHyper => expon::nuh_verdict(oracle, &family),
            _ => expon::hyper_uniform_verdict(oracle, &family),
        }
    }
}

/// A table atom seen as a hypercoherence: the verdict of a set is the common
/// verdict of every bag with that support.
fn table_set_verdict(table: &TableSpace, x: &BTreeSet<Point>) -> Result<Verdict, VerdictError> {
    let (v, _) = support_closure_verdict(|b| table.lookup(b), x, &table.k, table.cap)?;
    Ok(v)
}

/// Polarity of a point in the bipartite reading of `space`.
pub fn polarity(space: &Space, p: &Point) -> Result<Polarity, VerdictError> {
    use Polarity::*;
    match (space, p) {
        (Space::One, Point::Star) => Ok(Positive),
        (Space::Bot, Point::Star) => Ok(Negative),
        (Space::Zero | Space::Top, _) => Err(VerdictError::EmptyWeb),
        (Space::Plus(a, _) | Space::With(a, _), Point::Inl(x)) => polarity(a, x),
        (Space::Plus(_, b) | Space::With(_, b), Point::Inr(x)) => polarity(b, x),
        (Space::Tensor(a, b), Point::Pair(x, y)) => {
            let both = polarity(a, x)? == Positive && polarity(b, y)? == Positive;
            Ok(if both { Positive } else { Negative })
        }
        (Space::Par(a, b), Point::Pair(x, y)) => {
            let some = polarity(a, x)? == Positive || polarity(b, y)? == Positive;
            Ok(if some { Positive } else { Negative })
        }
        (Space::OfCourse(a), Point::Bag(m)) => expon::bipartite_bag_polarity(|q| polarity(a, q), m, false),
        (Space::WhyNot(a), Point::Bag(m)) => expon::bipartite_bag_polarity(|q| polarity(a, q), m, true),
        (Space::Atom { .. }, _) => Err(VerdictError::TableUnsupported("bipartite".into())),
        (_, p) => Err(outside(p)),
    }
}
