use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::multiset::{for_each_bag_of_size, Bag};
use crate::neutral::uniform_member;
use crate::space::{polarity, set_verdict, verdict_unchecked, Engine, Polarity, SemanticsConfig, Space, Verdict, VerdictError};
use crate::syntax::{in_web, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueStatus {
    Clique,
    /// No witness among the cardinalities up to the bound; larger ones in K
    /// were not examined.
    CliqueUpToBound(usize),
    NotClique { witness: Bag<Point>, verdict: Verdict },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueReport {
    pub status: CliqueStatus,
    /// Cardinalities examined (subset sizes for the set engine).
    pub checked: Vec<usize>,
}

impl CliqueReport {
    pub fn is_clique(&self) -> bool {
        !matches!(self.status, CliqueStatus::NotClique { .. })
    }

    pub fn witness(&self) -> Option<&Bag<Point>> {
        match &self.status {
            CliqueStatus::NotClique { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn word(&self) -> &'static str {
        match self.status {
            CliqueStatus::Clique => "clique",
            CliqueStatus::CliqueUpToBound(_) => "clique-up-to-bound",
            CliqueStatus::NotClique { .. } => "not-clique",
        }
    }
}

impl fmt::Display for CliqueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            CliqueStatus::Clique => write!(f, "clique"),
            CliqueStatus::CliqueUpToBound(b) => write!(f, "clique up to cardinality {b}"),
            CliqueStatus::NotClique { witness, verdict } => {
                write!(f, "not a clique: {} is {}", Point::Bag(witness.clone()).render(), verdict.word())
            }
        }
    }
}

/// Largest candidate set whose subsets the set engine checks exhaustively;
/// larger sets are checked up to the cardinality bound.
pub const MAX_SET_CLIQUE: usize = 20;

/// Clique test with web membership checked first (the uniform web under a
/// uniform configuration).
pub fn is_clique(
    cfg: &SemanticsConfig,
    space: &Space,
    x: &BTreeSet<Point>,
    card_bound: usize,
) -> Result<CliqueReport, VerdictError> {
    for p in x {
        if !in_web(space, p) || (cfg.is_uniform() && !uniform_member(cfg, space, p)?.holds()) {
            return Err(VerdictError::OutsideWeb(p.render()));
        }
    }
    clique_unchecked(cfg, space, x, card_bound)
}

/// Searches for a strictly incoherent bag over `x`.
///
/// Multiset engine: every bag of cardinality in K up to `card_bound`, by
/// increasing cardinality. Set engine: every nonempty subset (up to
/// `card_bound` elements for sets above [`MAX_SET_CLIQUE`]). Bipartite:
/// every point must be positive. Relational: every set is a clique.
pub fn clique_unchecked(
    cfg: &SemanticsConfig,
    space: &Space,
    x: &BTreeSet<Point>,
    card_bound: usize,
) -> Result<CliqueReport, VerdictError> {
    let elems: Vec<Point> = x.iter().cloned().collect();
    match &cfg.engine {
        Engine::Relational => Ok(CliqueReport { status: CliqueStatus::Clique, checked: Vec::new() }),
        Engine::Bipartite => {
            for p in &elems {
                if polarity(space, p)? == Polarity::Negative {
                    return Ok(CliqueReport {
                        status: CliqueStatus::NotClique { witness: Bag::singleton(p.clone()), verdict: Verdict::StrictIncoherent },
                        checked: vec![1],
                    });
                }
            }
            Ok(CliqueReport { status: CliqueStatus::Clique, checked: vec![1] })
        }
        Engine::Multiset(k) => {
            let mut checked = Vec::new();
            if elems.is_empty() {
                return Ok(CliqueReport { status: CliqueStatus::Clique, checked });
            }
            for n in k.members_up_to(card_bound) {
                checked.push(n);
                let mut found = None;
                let mut err = None;
                let _ = for_each_bag_of_size(&elems, n, &mut |b: &Bag<Point>| match verdict_unchecked(cfg, space, b) {
                    Ok(Verdict::StrictIncoherent) => {
                        found = Some(b.clone());
                        ControlFlow::Break(())
                    }
                    Ok(_) => ControlFlow::Continue(()),
                    Err(e) => {
                        err = Some(e);
                        ControlFlow::Break(())
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if let Some(witness) = found {
                    return Ok(CliqueReport {
                        status: CliqueStatus::NotClique { witness, verdict: Verdict::StrictIncoherent },
                        checked,
                    });
                }
            }
            let status = if k.covered_by(card_bound) { CliqueStatus::Clique } else { CliqueStatus::CliqueUpToBound(card_bound) };
            Ok(CliqueReport { status, checked })
        }
        Engine::SetEngine => {
            let n = elems.len();
            let exact = n <= MAX_SET_CLIQUE;
            let top = if exact { n } else { card_bound.min(n) };
            let mut checked = Vec::new();
            for size in 1..=top {
                checked.push(size);
                let mut found = None;
                let mut err = None;
                let _ = for_each_subset(&elems, size, &mut |s: &BTreeSet<Point>| match set_verdict(cfg, space, s) {
                    Ok(Verdict::StrictIncoherent) => {
                        found = Some(s.clone());
                        ControlFlow::Break(())
                    }
                    Ok(_) => ControlFlow::Continue(()),
                    Err(e) => {
                        err = Some(e);
                        ControlFlow::Break(())
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if let Some(s) = found {
                    return Ok(CliqueReport {
                        status: CliqueStatus::NotClique { witness: s.into_iter().collect(), verdict: Verdict::StrictIncoherent },
                        checked,
                    });
                }
            }
            let status = if exact { CliqueStatus::Clique } else { CliqueStatus::CliqueUpToBound(top) };
            Ok(CliqueReport { status, checked })
        }
    }
}

/// Visits the subsets of `elems` with exactly `k` elements.
fn for_each_subset<F>(elems: &[Point], k: usize, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&BTreeSet<Point>) -> ControlFlow<()>,
{
    fn go<F>(elems: &[Point], k: usize, acc: &mut BTreeSet<Point>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&BTreeSet<Point>) -> ControlFlow<()>,
    {
        if k == 0 {
            return visit(acc);
        }
        for i in 0..elems.len() {
            if elems.len() - i < k {
                break;
            }
            acc.insert(elems[i].clone());
            let r = go(&elems[i + 1..], k - 1, acc, visit);
            acc.remove(&elems[i]);
            r?;
        }
        ControlFlow::Continue(())
    }
    go(elems, k, &mut BTreeSet::new(), visit)
}
