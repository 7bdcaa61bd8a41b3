//! Verdict rules of the exponentials. Each rule takes an oracle judging
//! multisets (or sets) of the body space.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::multiset::{
    bag_sum, for_each_column_decomposition, for_each_section, for_each_set_section, for_each_sub_bag_of_size,
    Bag,
};
use crate::space::{Polarity, Verdict, VerdictError};
use crate::syntax::Point;

/// Runs `search`, turning an oracle error raised inside it into the result.
fn search_with<F>(search: F) -> Result<bool, VerdictError>
where
    F: FnOnce(&mut Option<VerdictError>) -> ControlFlow<()>,
{
    let mut err = None;
    let found = search(&mut err).is_break();
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Does some section of `mu` get strict incoherence from the oracle?
fn has_incoherent_section<F>(oracle: &mut F, mu: &Bag<Bag<Point>>) -> Result<bool, VerdictError>
where
    F: FnMut(&Bag<Point>) -> Result<Verdict, VerdictError>,
{
    search_with(|err| {
        for_each_section(mu, |s| match oracle(s) {
            Ok(Verdict::StrictIncoherent) => ControlFlow::Break(()),
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                *err = Some(e);
                ControlFlow::Break(())
            }
        })
    })
}

/// The co-free exponential: strictly incoherent when some section is, neutral
/// when the components can be laid out as rows whose columns are all
/// neutral, strictly coherent otherwise.
pub fn cofree_verdict<F>(mut oracle: F, mu: &Bag<Bag<Point>>, budget: Option<usize>) -> Result<Verdict, VerdictError>
where
    F: FnMut(&Bag<Point>) -> Result<Verdict, VerdictError>,
{
    if has_incoherent_section(&mut oracle, mu)? {
        return Ok(Verdict::StrictIncoherent);
    }
    let mut err = None;
    let found = for_each_column_decomposition(
        mu,
        budget,
        |column| {
            if err.is_some() {
                return false;
            }
            let b: Bag<Point> = column.iter().cloned().collect();
            match oracle(&b) {
                Ok(v) => v == Verdict::Neutral,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        },
        |_| ControlFlow::Break(()),
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(if found.is_break() { Verdict::Neutral } else { Verdict::StrictCoherent })
}

/// The indexed exponential, judged on the sum of the components.
pub fn indexed_verdict<F>(mut oracle: F, mu: &Bag<Bag<Point>>) -> Result<Verdict, VerdictError>
where
    F: FnMut(&Bag<Point>) -> Result<Verdict, VerdictError>,
{
    let k = mu.len();
    let sigma = bag_sum(mu.iter());
    let incoherent = search_with(|err| {
        for_each_sub_bag_of_size(&sigma, k, &mut |s| match oracle(s) {
            Ok(Verdict::StrictIncoherent) => ControlFlow::Break(()),
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                *err = Some(e);
                ControlFlow::Break(())
            }
        })
    })?;
    if incoherent {
        return Ok(Verdict::StrictIncoherent);
    }
    // star-shaped: some centre a such that every k-sub-bag through a is
    // strictly coherent
    for a in sigma.distinct() {
        let mut rest = sigma.clone();
        rest.remove_one(a);
        let mut err = None;
        let blocked = for_each_sub_bag_of_size(&rest, k.saturating_sub(1), &mut |s| {
            let mut full = s.clone();
            full.insert(a.clone());
            match oracle(&full) {
                Ok(Verdict::StrictCoherent) => ControlFlow::Continue(()),
                Ok(_) => ControlFlow::Break(()),
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        })
        .is_break();
        if let Some(e) = err {
            return Err(e);
        }
        if !blocked {
            return Ok(Verdict::StrictCoherent);
        }
    }
    Ok(Verdict::Neutral)
}

fn set_members(x: &BTreeSet<Bag<Point>>) -> BTreeSet<BTreeSet<Point>> {
    x.iter().map(Bag::support).collect()
}

fn has_incoherent_set_section<F>(oracle: &mut F, x: &BTreeSet<Bag<Point>>) -> Result<bool, VerdictError>
where
    F: FnMut(&BTreeSet<Point>) -> Result<Verdict, VerdictError>,
{
    let members = set_members(x);
    search_with(|err| {
        for_each_set_section(&members, |s| match oracle(s) {
            Ok(Verdict::StrictIncoherent) => ControlFlow::Break(()),
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                *err = Some(e);
                ControlFlow::Break(())
            }
        })
    })
}

/// The non-uniform hypercoherence exponential on a nonempty set of bags.
/// Strict incoherence of a section is tested before neutrality.
pub fn nuh_verdict<F>(mut oracle: F, x: &BTreeSet<Bag<Point>>) -> Result<Verdict, VerdictError>
where
    F: FnMut(&BTreeSet<Point>) -> Result<Verdict, VerdictError>,
{
    if x.is_empty() {
        return Err(VerdictError::EmptyInput);
    }
    if has_incoherent_set_section(&mut oracle, x)? {
        return Ok(Verdict::StrictIncoherent);
    }
    if x.len() == 1 {
        let mu = x.iter().next().expect("one member");
        for a in mu.distinct() {
            let single: BTreeSet<Point> = [a.clone()].into_iter().collect();
            if oracle(&single)? != Verdict::Neutral {
                return Ok(Verdict::StrictCoherent);
            }
        }
        return Ok(Verdict::Neutral);
    }
    Ok(Verdict::StrictCoherent)
}

/// The uniform hypercoherence exponential: neutral exactly on singletons.
pub fn hyper_uniform_verdict<F>(mut oracle: F, x: &BTreeSet<Bag<Point>>) -> Result<Verdict, VerdictError>
where
    F: FnMut(&BTreeSet<Point>) -> Result<Verdict, VerdictError>,
{
    if x.is_empty() {
        return Err(VerdictError::EmptyInput);
    }
    if has_incoherent_set_section(&mut oracle, x)? {
        Ok(Verdict::StrictIncoherent)
    } else if x.len() == 1 {
        Ok(Verdict::Neutral)
    } else {
        Ok(Verdict::StrictCoherent)
    }
}

/// Polarity of a bag in `!A` (`why_not` false) or `?A` (`why_not` true):
/// `!` bags are positive when all elements are, `?` bags when some element is.
pub fn bipartite_bag_polarity<F>(mut elem: F, b: &Bag<Point>, why_not: bool) -> Result<Polarity, VerdictError>
where
    F: FnMut(&Point) -> Result<Polarity, VerdictError>,
{
    let mut any_pos = false;
    let mut all_pos = true;
    for p in b.distinct() {
        match elem(p)? {
            Polarity::Positive => any_pos = true,
            Polarity::Negative => all_pos = false,
        }
    }
    let positive = if why_not { any_pos } else { all_pos };
    Ok(if positive { Polarity::Positive } else { Polarity::Negative })
}
