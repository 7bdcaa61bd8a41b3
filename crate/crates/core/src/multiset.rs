//! Finite multisets ("bags") and the section / column machinery used by the
//! exponential constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

/// A finite multiset. Elements are kept in their canonical (`Ord`) order, so
/// two bags are equal exactly when they have the same counts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bag<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Bag<T> {
    fn default() -> Self {
        Bag { counts: BTreeMap::new() }
    }
}

impl<T: Ord> Bag<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: T) -> Self {
        Self::repeat(x, 1)
    }

    /// `k[x]`.
    pub fn repeat(x: T, k: usize) -> Self {
        let mut b = Bag::new();
        b.insert_many(x, k);
        b
    }

    pub fn insert(&mut self, x: T) {
        self.insert_many(x, 1);
    }

    pub fn insert_many(&mut self, x: T, k: usize) {
        if k > 0 {
            *self.counts.entry(x).or_insert(0) += k;
        }
    }

    /// Removes one occurrence; returns false when `x` was absent.
    pub fn remove_one(&mut self, x: &T) -> bool {
        match self.counts.get_mut(x) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(x);
                true
            }
            None => false,
        }
    }

    pub fn count(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.counts.contains_key(x)
    }

    /// Cardinality, counting repetitions.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct elements.
    pub fn distinct_len(&self) -> usize {
        self.counts.len()
    }

    /// Elements with repetition, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.counts
            .iter()
            .flat_map(|(x, &c)| std::iter::repeat_n(x, c))
    }

    /// Distinct elements with their counts.
    pub fn counts(&self) -> impl Iterator<Item = (&T, usize)> + '_ {
        self.counts.iter().map(|(x, &c)| (x, c))
    }

    pub fn distinct(&self) -> impl Iterator<Item = &T> + '_ {
        self.counts.keys()
    }

    /// True when every count is at most one.
    pub fn is_set(&self) -> bool {
        self.counts.values().all(|&c| c <= 1)
    }

    /// The single distinct element, when the support is a singleton.
    pub fn only_element(&self) -> Option<&T> {
        if self.counts.len() == 1 {
            self.counts.keys().next()
        } else {
            None
        }
    }
}

impl<T: Ord + Clone> Bag<T> {
    pub fn support(&self) -> BTreeSet<T> {
        self.counts.keys().cloned().collect()
    }

    pub fn sum(&self, other: &Bag<T>) -> Bag<T> {
        let mut out = self.clone();
        for (x, c) in other.counts() {
            out.insert_many(x.clone(), c);
        }
        out
    }

    /// Bag with every count clamped to one.
    pub fn to_set_bag(&self) -> Bag<T> {
        self.distinct().cloned().collect()
    }

    /// `self ≤ other`: every count of `self` is at most the count in `other`.
    pub fn is_sub_bag(&self, other: &Bag<T>) -> bool {
        self.counts.iter().all(|(x, &c)| other.count(x) >= c)
    }

    /// Count-wise truncated difference.
    pub fn difference(&self, other: &Bag<T>) -> Bag<T>
    where
        T: Clone,
    {
        let mut out = Bag::new();
        for (x, c) in self.counts() {
            let d = c.saturating_sub(other.count(x));
            if d > 0 {
                out.insert_many(x.clone(), d);
            }
        }
        out
    }

    /// Every sub-bag, the empty one and `self` included.
    pub fn sub_bags(&self) -> Vec<Bag<T>>
    where
        T: Clone,
    {
        let mut out = vec![Bag::new()];
        for (x, c) in self.counts() {
            let mut next = Vec::with_capacity(out.len() * (c + 1));
            for b in &out {
                for k in 0..=c {
                    let mut nb = b.clone();
                    nb.insert_many(x.clone(), k);
                    next.push(nb);
                }
            }
            out = next;
        }
        out
    }

    pub fn map<U: Ord, F: FnMut(&T) -> U>(&self, mut f: F) -> Bag<U> {
        let mut out = Bag::new();
        for (x, c) in self.counts() {
            out.insert_many(f(x), c);
        }
        out
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.iter().cloned().collect()
    }
}

impl<T: Ord> FromIterator<T> for Bag<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut b = Bag::new();
        for x in iter {
            b.insert(x);
        }
        b
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Bag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Bag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(bag")?;
        for x in self.iter() {
            write!(f, " {x}")?;
        }
        write!(f, ")")
    }
}

/// `Σ bags`.
pub fn bag_sum<'a, T, I>(bags: I) -> Bag<T>
where
    T: Ord + Clone + 'a,
    I: IntoIterator<Item = &'a Bag<T>>,
{
    let mut out = Bag::new();
    for b in bags {
        for (x, c) in b.counts() {
            out.insert_many(x.clone(), c);
        }
    }
    out
}

pub fn support<T: Ord + Clone>(b: &Bag<T>) -> BTreeSet<T> {
    b.support()
}

pub fn sub_bag<T: Ord + Clone>(a: &Bag<T>, b: &Bag<T>) -> bool {
    a.is_sub_bag(b)
}

/// Calls `visit` on every bag of cardinality `k` over `elems` (distinct,
/// sorted). Stops early on `Break`.
pub fn for_each_bag_of_size<T, F>(elems: &[T], k: usize, visit: &mut F) -> ControlFlow<()>
where
    T: Ord + Clone,
    F: FnMut(&Bag<T>) -> ControlFlow<()>,
{
    fn go<T: Ord + Clone, F: FnMut(&Bag<T>) -> ControlFlow<()>>(
        elems: &[T],
        k: usize,
        acc: &mut Bag<T>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if k == 0 {
            return visit(acc);
        }
        let Some((first, rest)) = elems.split_first() else {
            return ControlFlow::Continue(());
        };
        // take c copies of `first`, c from k down to 0
        for c in (0..=k).rev() {
            acc.insert_many(first.clone(), c);
            let r = go(rest, k - c, acc, visit);
            for _ in 0..c {
                acc.remove_one(first);
            }
            r?;
        }
        ControlFlow::Continue(())
    }
    let mut acc = Bag::new();
    go(elems, k, &mut acc, visit)
}

/// Calls `visit` on every sub-bag of `b` of cardinality `k`.
pub fn for_each_sub_bag_of_size<T, F>(b: &Bag<T>, k: usize, visit: &mut F) -> ControlFlow<()>
where
    T: Ord + Clone,
    F: FnMut(&Bag<T>) -> ControlFlow<()>,
{
    fn go<T: Ord + Clone, F: FnMut(&Bag<T>) -> ControlFlow<()>>(
        counts: &[(T, usize)],
        k: usize,
        acc: &mut Bag<T>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if k == 0 {
            return visit(acc);
        }
        let Some(((x, c), rest)) = counts.split_first() else {
            return ControlFlow::Continue(());
        };
        let left: usize = rest.iter().map(|(_, c)| c).sum();
        let lo = k.saturating_sub(left);
        for take in (lo..=(*c).min(k)).rev() {
            acc.insert_many(x.clone(), take);
            let r = go(rest, k - take, acc, visit);
            for _ in 0..take {
                acc.remove_one(x);
            }
            r?;
        }
        ControlFlow::Continue(())
    }
    if k > b.len() {
        return ControlFlow::Continue(());
    }
    let counts: Vec<(T, usize)> = b.counts().map(|(x, c)| (x.clone(), c)).collect();
    go(&counts, k, &mut Bag::new(), visit)
}

/// All bags of cardinality `k` over the distinct elements `elems`.
pub fn bags_of_size<T: Ord + Clone>(elems: &[T], k: usize) -> Vec<Bag<T>> {
    let mut out = Vec::new();
    let _ = for_each_bag_of_size(elems, k, &mut |b| {
        out.push(b.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Visits every section of `mu` (one element picked from each component,
/// respecting multiplicity), each distinct section once. Components repeated
/// `c` times contribute a bag of `c` picks from their support.
pub fn for_each_section<T, F>(mu: &Bag<Bag<T>>, mut visit: F) -> ControlFlow<()>
where
    T: Ord + Clone,
    F: FnMut(&Bag<T>) -> ControlFlow<()>,
{
    let groups: Vec<(Vec<T>, usize)> = mu
        .counts()
        .map(|(x, c)| (x.distinct().cloned().collect(), c))
        .collect();
    if groups.iter().any(|(s, _)| s.is_empty()) {
        return ControlFlow::Continue(());
    }

    fn go<T: Ord + Clone, F: FnMut(&Bag<T>) -> ControlFlow<()>>(
        groups: &[(Vec<T>, usize)],
        acc: &Bag<T>,
        seen: &mut BTreeSet<Bag<T>>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        let Some(((elems, c), rest)) = groups.split_first() else {
            if seen.insert(acc.clone()) {
                return visit(acc);
            }
            return ControlFlow::Continue(());
        };
        for_each_bag_of_size(elems, *c, &mut |pick| {
            let next = acc.sum(pick);
            go(rest, &next, seen, visit)
        })
    }

    let mut seen = BTreeSet::new();
    go(&groups, &Bag::new(), &mut seen, &mut visit)
}

/// All sections of a bag of bags. Empty when some component is empty.
pub fn sections<T: Ord + Clone>(mu: &Bag<Bag<T>>) -> BTreeSet<Bag<T>> {
    let mut out = BTreeSet::new();
    let _ = for_each_section(mu, |s| {
        out.insert(s.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Visits every set section of the family `members`: sets `s` included in the
/// union that meet every member.
pub fn for_each_set_section<T, F>(members: &BTreeSet<BTreeSet<T>>, mut visit: F) -> ControlFlow<()>
where
    T: Ord + Clone,
    F: FnMut(&BTreeSet<T>) -> ControlFlow<()>,
{
    if members.is_empty() || members.iter().any(|m| m.is_empty()) {
        return ControlFlow::Continue(());
    }
    let universe: Vec<T> = members.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    assert!(universe.len() < 64, "set section universe too large");
    for mask in 1u64..(1u64 << universe.len()) {
        let s: BTreeSet<T> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect();
        if members.iter().all(|m| !m.is_disjoint(&s)) {
            visit(&s)?;
        }
    }
    ControlFlow::Continue(())
}

pub fn set_sections<T: Ord + Clone>(members: &BTreeSet<BTreeSet<T>>) -> BTreeSet<BTreeSet<T>> {
    let mut out = BTreeSet::new();
    let _ = for_each_set_section(members, |s| {
        out.insert(s.clone());
        ControlFlow::Continue(())
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("column decomposition search exceeded its budget of {0} steps")]
pub struct BudgetExceeded(pub usize);

/// One arrangement of the components of a bag of bags as rows of a matrix.
/// `columns[j][i]` is the entry of row `i` in column `j`; rows follow the
/// canonical iteration order of the bag of bags (with repetition).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColumnFamily<T: Ord> {
    pub columns: Vec<Vec<T>>,
}

impl<T: Ord + Clone> ColumnFamily<T> {
    pub fn column_bags(&self) -> Vec<Bag<T>> {
        self.columns.iter().map(|c| c.iter().cloned().collect()).collect()
    }

    /// Row `i` re-read from the columns.
    pub fn row(&self, i: usize) -> Bag<T> {
        self.columns.iter().map(|c| c[i].clone()).collect()
    }
}

/// Enumerates the column decompositions of `mu`, each up to column
/// permutation exactly once (columns are produced in non-decreasing order).
///
/// `column_ok` prunes partial families: a completed column is kept only when
/// it returns true. `budget` bounds the number of search steps.
pub fn for_each_column_decomposition<T, P, F>(
    mu: &Bag<Bag<T>>,
    budget: Option<usize>,
    mut column_ok: P,
    mut visit: F,
) -> Result<ControlFlow<()>, BudgetExceeded>
where
    T: Ord + Clone,
    P: FnMut(&[T]) -> bool,
    F: FnMut(&ColumnFamily<T>) -> ControlFlow<()>,
{
    let rows: Vec<&Bag<T>> = mu.iter().collect();
    if rows.is_empty() {
        return Ok(visit(&ColumnFamily { columns: Vec::new() }));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Ok(ControlFlow::Continue(()));
    }
    let mut remaining: Vec<Bag<T>> = rows.iter().map(|r| (*r).clone()).collect();

    struct Search<'a, T: Ord, P, F> {
        remaining: &'a mut Vec<Bag<T>>,
        columns: Vec<Vec<T>>,
        current: Vec<T>,
        steps: usize,
        budget: Option<usize>,
        column_ok: &'a mut P,
        visit: &'a mut F,
    }

    impl<T: Ord + Clone, P: FnMut(&[T]) -> bool, F: FnMut(&ColumnFamily<T>) -> ControlFlow<()>>
        Search<'_, T, P, F>
    {
        fn run(&mut self, tied: bool) -> Result<ControlFlow<()>, BudgetExceeded> {
            self.steps += 1;
            if let Some(b) = self.budget {
                if self.steps > b {
                    return Err(BudgetExceeded(b));
                }
            }
            let nrows = self.remaining.len();
            let r = self.current.len();
            if r == nrows {
                if !(self.column_ok)(&self.current) {
                    return Ok(ControlFlow::Continue(()));
                }
                let col = std::mem::take(&mut self.current);
                self.columns.push(col);
                let out = if self.remaining[0].is_empty() {
                    let family = ColumnFamily { columns: self.columns.clone() };
                    Ok((self.visit)(&family))
                } else {
                    self.run(true)
                };
                self.current = self.columns.pop().expect("column just pushed");
                return out;
            }
            let prev = if tied { self.columns.last().map(|c| c[r].clone()) } else { None };
            let candidates: Vec<T> = self.remaining[r].distinct().cloned().collect();
            for e in candidates {
                if let Some(p) = &prev {
                    if e < *p {
                        continue;
                    }
                }
                let still_tied = prev.as_ref().is_some_and(|p| *p == e);
                self.remaining[r].remove_one(&e);
                self.current.push(e.clone());
                let out = self.run(still_tied);
                self.current.pop();
                self.remaining[r].insert(e);
                if let ControlFlow::Break(()) = out? {
                    return Ok(ControlFlow::Break(()));
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }

    if width == 0 {
        return Ok(visit(&ColumnFamily { columns: Vec::new() }));
    }
    let mut search = Search {
        remaining: &mut remaining,
        columns: Vec::new(),
        current: Vec::new(),
        steps: 0,
        budget,
        column_ok: &mut column_ok,
        visit: &mut visit,
    };
    search.run(true)
}

/// Every column decomposition of `mu`, up to column permutation.
pub fn column_decompositions<T: Ord + Clone>(mu: &Bag<Bag<T>>) -> Vec<ColumnFamily<T>> {
    let mut out = Vec::new();
    let _ = for_each_column_decomposition(
        mu,
        None,
        |_| true,
        |f| {
            out.push(f.clone());
            ControlFlow::Continue(())
        },
    );
    out
}
