use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::{KSet, Verdict, VerdictError};
use crate::multiset::{bags_of_size, Bag};
use crate::syntax::point::is_label;
use crate::syntax::{parse_bag, Point};

/// A space given by an explicit verdict table over a finite web of labels.
///
/// The table covers every bag whose cardinality is in `k` and at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableSpace {
    pub name: Option<String>,
    pub web: Vec<Arc<str>>,
    pub k: KSet,
    pub cap: usize,
    entries: BTreeMap<Bag<Point>, Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("table is missing a verdict for {0}")]
    Incomplete(String),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> TableError {
    TableError::Syntax { line, message: message.into() }
}

impl TableSpace {
    /// Builds a table by evaluating `rule` on every bag below the cap.
    pub fn from_fn<F>(web: &[&str], k: KSet, cap: usize, mut rule: F) -> Result<TableSpace, TableError>
    where
        F: FnMut(&Bag<Point>) -> Verdict,
    {
        let mut ts = TableSpace::empty(web, k, cap)?;
        for b in ts.domain() {
            let v = rule(&b);
            ts.entries.insert(b, v);
        }
        Ok(ts)
    }

    fn empty(web: &[&str], k: KSet, cap: usize) -> Result<TableSpace, TableError> {
        let mut labels: Vec<Arc<str>> = Vec::new();
        for w in web {
            if !is_label(w) {
                return Err(TableError::Invalid(format!("`{w}` is not a valid label")));
            }
            if labels.iter().any(|l| &**l == *w) {
                return Err(TableError::Invalid(format!("label `{w}` declared twice")));
            }
            labels.push(Arc::from(*w));
        }
        labels.sort();
        if cap < 2 {
            return Err(TableError::Invalid("cap must be at least 2".into()));
        }
        Ok(TableSpace { name: None, web: labels, k, cap, entries: BTreeMap::new() })
    }

    /// A table whose verdict only depends on the size of the support.
    pub fn by_support_size(
        web: &[&str],
        k: KSet,
        cap: usize,
        rule: &[(usize, Verdict)],
    ) -> Result<TableSpace, TableError> {
        let mut missing = None;
        let ts = TableSpace::from_fn(web, k, cap, |b| {
            let n = b.distinct_len();
            match rule.iter().find(|(s, _)| *s == n) {
                Some((_, v)) => *v,
                None => {
                    missing.get_or_insert_with(|| b.clone());
                    Verdict::Neutral
                }
            }
        })?;
        match missing {
            Some(b) => Err(TableError::Incomplete(Point::Bag(b).render())),
            None => Ok(ts),
        }
    }

    /// The space `G`: web `a b c`, neutral on singleton supports, strictly
    /// coherent on two-element supports, strictly incoherent on `{a,b,c}`.
    pub fn g(k: KSet, cap: usize) -> TableSpace {
        let mut ts = TableSpace::by_support_size(
            &["a", "b", "c"],
            k,
            cap,
            &[(1, Verdict::Neutral), (2, Verdict::StrictCoherent), (3, Verdict::StrictIncoherent)],
        )
        .expect("G is total");
        ts.name = Some("G".into());
        ts
    }

    pub fn with_name(mut self, name: &str) -> TableSpace {
        self.name = Some(name.into());
        self
    }

    pub fn points(&self) -> Vec<Point> {
        self.web.iter().map(|l| Point::Label(l.clone())).collect()
    }

    /// Every bag the table must cover.
    pub fn domain(&self) -> Vec<Bag<Point>> {
        let pts = self.points();
        self.k.members_up_to(self.cap).into_iter().flat_map(|k| bags_of_size(&pts, k)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Bag<Point>, Verdict)> + '_ {
        self.entries.iter().map(|(b, v)| (b, *v))
    }

    pub fn set(&mut self, b: Bag<Point>, v: Verdict) {
        self.entries.insert(b, v);
    }

    pub fn lookup(&self, m: &Bag<Point>) -> Result<Verdict, VerdictError> {
        if !self.k.contains(m.len()) {
            return Err(VerdictError::CardinalityNotInK(m.len()));
        }
        for p in m.distinct() {
            match p {
                Point::Label(l) if self.web.contains(l) => {}
                other => return Err(VerdictError::OutsideWeb(other.render())),
            }
        }
        self.entries
            .get(m)
            .copied()
            .ok_or_else(|| VerdictError::MissingEntry(Point::Bag(m.clone()).render()))
    }

    /// Every neutral entry has singleton support.
    pub fn is_weakly_reflexive(&self) -> bool {
        self.entries.iter().all(|(b, v)| *v != Verdict::Neutral || b.distinct_len() == 1)
    }

    /// Every singleton-support entry is neutral and no other entry is.
    pub fn is_reflexive(&self) -> bool {
        self.entries.iter().all(|(b, v)| (*v == Verdict::Neutral) == (b.distinct_len() == 1))
    }

    pub fn check_total(&self) -> Result<(), TableError> {
        for b in self.domain() {
            if !self.entries.contains_key(&b) {
                return Err(TableError::Incomplete(Point::Bag(b).render()));
            }
        }
        Ok(())
    }

    /// Text form accepted by [`parse_table_space`].
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(out, "name: {n}");
        }
        let web: Vec<&str> = self.web.iter().map(|l| &**l).collect();
        let _ = writeln!(out, "web: {}", web.join(" "));
        let _ = writeln!(out, "K: {}", self.k);
        let _ = writeln!(out, "cap: {}", self.cap);
        for (b, v) in &self.entries {
            let word = match v {
                Verdict::StrictCoherent => "coherent-strict",
                Verdict::Neutral => "neutral",
                Verdict::StrictIncoherent => "incoherent-strict",
            };
            let _ = writeln!(out, "verdict {} {word}", Point::Bag(b.clone()).render());
        }
        out
    }
}

/// Parses the `.tbs` table format.
///
/// ```text
/// # comment
/// name: G
/// web: a b c
/// K: all            # pair | all | 2,3
/// cap: 4            # required when K is `all`
/// support 1 neutral # default verdict by support size
/// verdict (bag a b) coherent-strict
/// ```
pub fn parse_table_space(text: &str) -> Result<TableSpace, TableError> {
    let mut name = None;
    let mut web: Option<Vec<String>> = None;
    let mut k: Option<KSet> = None;
    let mut cap: Option<usize> = None;
    let mut by_support: Vec<(usize, Verdict, usize)> = Vec::new();
    let mut explicit: Vec<(usize, String, Verdict)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("web:") {
            web = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("K:") {
            k = Some(rest.parse::<KSet>().map_err(|e| syntax(line_no, e))?);
        } else if let Some(rest) = line.strip_prefix("cap:") {
            let n = rest.trim().parse::<usize>().map_err(|_| syntax(line_no, "cap expects an integer"))?;
            cap = Some(n);
        } else if let Some(rest) = line.strip_prefix("support ") {
            let mut parts = rest.split_whitespace();
            let n = parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| syntax(line_no, "support expects a size"))?;
            let word = parts.next().ok_or_else(|| syntax(line_no, "support expects a verdict"))?;
            let v = Verdict::from_word(word).ok_or_else(|| syntax(line_no, format!("unknown verdict `{word}`")))?;
            if parts.next().is_some() {
                return Err(syntax(line_no, "trailing text after support rule"));
            }
            by_support.push((n, v, line_no));
        } else if let Some(rest) = line.strip_prefix("verdict ") {
            let rest = rest.trim();
            let close = rest.rfind(')').ok_or_else(|| syntax(line_no, "expected `(bag ...)`"))?;
            let (bag_text, word) = rest.split_at(close + 1);
            let word = word.trim();
            let v = Verdict::from_word(word).ok_or_else(|| syntax(line_no, format!("unknown verdict `{word}`")))?;
            explicit.push((line_no, bag_text.to_string(), v));
        } else {
            return Err(syntax(line_no, format!("unrecognised line `{line}`")));
        }
    }

    let web = web.ok_or_else(|| TableError::Invalid("missing `web:` line".into()))?;
    let k = k.ok_or_else(|| TableError::Invalid("missing `K:` line".into()))?;
    let cap = match (cap, k.max()) {
        (Some(c), _) => c,
        (None, Some(m)) => m,
        (None, None) => return Err(TableError::Invalid("`cap:` is required when K is `all`".into())),
    };
    let web_refs: Vec<&str> = web.iter().map(String::as_str).collect();
    let mut ts = TableSpace::empty(&web_refs, k, cap)?;
    ts.name = name;
    for b in ts.domain() {
        if let Some((_, v, _)) = by_support.iter().find(|(n, _, _)| *n == b.distinct_len()) {
            ts.entries.insert(b, *v);
        }
    }
    for (line_no, bag_text, v) in explicit {
        let b = parse_bag(&bag_text).map_err(|e| syntax(line_no, e.to_string()))?;
        for p in b.distinct() {
            match p {
                Point::Label(l) if ts.web.contains(l) => {}
                other => return Err(syntax(line_no, format!("{} is not in the web", other.render()))),
            }
        }
        if !ts.k.contains(b.len()) || b.len() > ts.cap {
            return Err(syntax(line_no, format!("cardinality {} is not in K below the cap", b.len())));
        }
        ts.entries.insert(b, v);
    }
    ts.check_total()?;
    Ok(ts)
}
