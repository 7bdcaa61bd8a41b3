use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use super::clique::{clique_unchecked, is_clique, CliqueReport};
use crate::multiset::{bags_of_size, Bag};
use crate::neutral::neutral_member;
use crate::space::{verdict_unchecked, ExpFlavor, KSet, SemanticsConfig, Space, TableSpace, Verdict, VerdictError};
use crate::syntax::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeterminismError {
    #[error("first argument is not a clique: {0}")]
    NotClique(CliqueReport),
    #[error("second argument is not an anti-clique: {0}")]
    NotAntiClique(CliqueReport),
    #[error("{0}")]
    Verdict(#[from] VerdictError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub intersection: BTreeSet<Point>,
    pub bounded: bool,
}

impl DeterminismReport {
    pub fn passes(&self) -> bool {
        self.intersection.len() <= 1
    }
}

/// Size of `x ∩ y` for a clique `x` of `space` and a clique `y` of its dual.
pub fn determinism_check(
    cfg: &SemanticsConfig,
    space: &Space,
    x: &BTreeSet<Point>,
    y: &BTreeSet<Point>,
    card_bound: usize,
) -> Result<DeterminismReport, DeterminismError> {
    let rx = is_clique(cfg, space, x, card_bound)?;
    if !rx.is_clique() {
        return Err(DeterminismError::NotClique(rx));
    }
    let ry = is_clique(cfg, &space.dual(), y, card_bound)?;
    if !ry.is_clique() {
        return Err(DeterminismError::NotAntiClique(ry));
    }
    let bounded = rx.status != super::CliqueStatus::Clique || ry.status != super::CliqueStatus::Clique;
    Ok(DeterminismReport { intersection: x.intersection(y).cloned().collect(), bounded })
}

const LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "g"];

/// A random weakly reflexive table on `web_size` labels. Constant bags are
/// neutral with high probability; other bags get a strict verdict.
pub fn random_weakly_reflexive_table<R: Rng>(rng: &mut R, web_size: usize, k: KSet, cap: usize) -> TableSpace {
    let web = &LABELS[..web_size.clamp(1, LABELS.len())];
    let reflexive: BTreeSet<usize> = (0..web.len()).filter(|_| rng.gen_bool(0.7)).collect();
    let strict = |rng: &mut R| if rng.gen_bool(0.5) { Verdict::StrictCoherent } else { Verdict::StrictIncoherent };
    TableSpace::from_fn(web, k, cap, |b| {
        if b.distinct_len() == 1 {
            let i = match b.only_element() {
                Some(Point::Label(l)) => web.iter().position(|w| **w == **l).unwrap_or(0),
                _ => 0,
            };
            if reflexive.contains(&i) || rng.gen_bool(0.3) {
                return Verdict::Neutral;
            }
        }
        strict(rng)
    })
    .expect("labels are valid")
    .with_name("random")
}

fn bang_cfg(k: &KSet) -> SemanticsConfig {
    SemanticsConfig::multiset(k.clone(), ExpFlavor::CoFree).expect("multiset/cofree").with_card_bound(6)
}

/// Bags over the web of `table` with cardinality at most `max_card`.
pub fn small_bags(table: &TableSpace, max_card: usize) -> Vec<Bag<Point>> {
    let pts = table.points();
    (0..=max_card).flat_map(|n| bags_of_size(&pts, n)).collect()
}

/// Bags `b` (cardinality at most `max_card`) on which the brute-force
/// neutrality of `!X` (every `n[b]`, `n` in K up to the cap, neutral) and the
/// structural characterization disagree.
pub fn key_lemma_discrepancies(table: &TableSpace, max_card: usize) -> Result<Vec<Bag<Point>>, VerdictError> {
    let cfg = bang_cfg(&table.k);
    let bang = Space::of_course(Space::atom(Arc::new(table.clone())));
    let mut out = Vec::new();
    for b in small_bags(table, max_card) {
        let p = Point::Bag(b.clone());
        let mut brute = true;
        for n in table.k.members_up_to(table.cap) {
            if verdict_unchecked(&cfg, &bang, &Bag::repeat(p.clone(), n))? != Verdict::Neutral {
                brute = false;
                break;
            }
        }
        if brute != neutral_member(&cfg, &bang, &p)?.holds() {
            out.push(b);
        }
    }
    Ok(out)
}

pub type Violation = (BTreeSet<Point>, BTreeSet<Point>);

/// Every pair (clique, anti-clique) of subsets of the web of `table`
/// intersecting in two or more points.
pub fn determinism_violations(table: &TableSpace) -> Result<Vec<Violation>, VerdictError> {
    let cfg = bang_cfg(&table.k);
    let atom = Space::atom(Arc::new(table.clone()));
    let dual = atom.dual();
    let pts = table.points();
    let mut cliques = Vec::new();
    let mut anti = Vec::new();
    for mask in 0u32..(1 << pts.len()) {
        let x: BTreeSet<Point> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        if clique_unchecked(&cfg, &atom, &x, table.cap)?.is_clique() {
            cliques.push(x.clone());
        }
        if clique_unchecked(&cfg, &dual, &x, table.cap)?.is_clique() {
            anti.push(x);
        }
    }
    let mut out = Vec::new();
    for x in &cliques {
        for y in &anti {
            if x.intersection(y).nth(1).is_some() {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}
