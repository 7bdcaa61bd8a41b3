//! Web membership and bounded enumeration, shared by formulas and by the
//! richer space descriptions of the semantic engines.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::formula::Formula;
use super::point::Point;
use crate::multiset::Bag;

/// How the web of a space is built from the webs of its parts.
pub enum WebShape<'a, S> {
    /// `{*}`
    Unit,
    /// `∅`
    Empty,
    /// Disjoint union, `inl` on the left.
    Sum(&'a S, &'a S),
    Product(&'a S, &'a S),
    /// Finite multisets over the body.
    Bags(&'a S),
    /// A finite set of labels.
    Labels(&'a [Arc<str>]),
}

pub trait HasWeb: Sized {
    fn web_shape(&self) -> WebShape<'_, Self>;
}

impl HasWeb for Formula {
    fn web_shape(&self) -> WebShape<'_, Self> {
        match self {
            Formula::One | Formula::Bot => WebShape::Unit,
            Formula::Zero | Formula::Top => WebShape::Empty,
            Formula::Plus(a, b) | Formula::With(a, b) => WebShape::Sum(a, b),
            Formula::Tensor(a, b) | Formula::Par(a, b) => WebShape::Product(a, b),
            Formula::OfCourse(a) | Formula::WhyNot(a) => WebShape::Bags(a),
        }
    }
}

pub fn in_web<S: HasWeb>(s: &S, p: &Point) -> bool {
    match (s.web_shape(), p) {
        (WebShape::Unit, Point::Star) => true,
        (WebShape::Sum(a, _), Point::Inl(x)) => in_web(a, x),
        (WebShape::Sum(_, b), Point::Inr(x)) => in_web(b, x),
        (WebShape::Product(a, b), Point::Pair(x, y)) => in_web(a, x) && in_web(b, y),
        (WebShape::Bags(a), Point::Bag(m)) => m.distinct().all(|x| in_web(a, x)),
        (WebShape::Labels(ls), Point::Label(l)) => ls.iter().any(|x| x == l),
        _ => false,
    }
}

pub fn point_in_web(f: &Formula, p: &Point) -> bool {
    in_web(f, p)
}

/// Every point of the web of `s` whose size is at most `max_size`, in
/// canonical order.
pub fn enumerate_web<S: HasWeb>(s: &S, max_size: usize) -> Vec<Point> {
    let mut out: Vec<Point> = enum_raw(s, max_size);
    out.sort();
    out.dedup();
    out
}

fn enum_raw<S: HasWeb>(s: &S, n: usize) -> Vec<Point> {
    if n == 0 {
        return Vec::new();
    }
    match s.web_shape() {
        WebShape::Unit => vec![Point::Star],
        WebShape::Empty => Vec::new(),
        WebShape::Labels(ls) => ls.iter().map(|l| Point::Label(l.clone())).collect(),
        WebShape::Sum(a, b) => {
            let mut out: Vec<Point> = enum_raw(a, n - 1).into_iter().map(Point::inl).collect();
            out.extend(enum_raw(b, n - 1).into_iter().map(Point::inr));
            out
        }
        WebShape::Product(a, b) => {
            let left = enum_raw(a, n.saturating_sub(2));
            let right = enum_raw(b, n.saturating_sub(2));
            let mut out = Vec::new();
            for x in &left {
                for y in &right {
                    if 1 + x.size() + y.size() <= n {
                        out.push(Point::pair(x.clone(), y.clone()));
                    }
                }
            }
            out
        }
        WebShape::Bags(a) => {
            let mut elems: Vec<(Point, usize)> =
                enum_raw(a, n - 1).into_iter().map(|p| {
                    let k = p.size();
                    (p, k)
                }).collect();
            elems.sort();
            elems.dedup();
            let mut out = Vec::new();
            bags_within(&elems, n - 1, &mut Bag::new(), &mut out);
            out
        }
    }
}

fn bags_within(elems: &[(Point, usize)], budget: usize, acc: &mut Bag<Point>, out: &mut Vec<Point>) {
    let Some(((p, size), rest)) = elems.split_first() else {
        out.push(Point::Bag(acc.clone()));
        return;
    };
    let mut c = 0;
    loop {
        bags_within(rest, budget - c * size, acc, out);
        if (c + 1) * size > budget {
            break;
        }
        acc.insert(p.clone());
        c += 1;
    }
    for _ in 0..c {
        acc.remove_one(p);
    }
}

pub fn enum_web(f: &Formula, max_size: usize) -> BTreeSet<Point> {
    enumerate_web(f, max_size).into_iter().collect()
}
