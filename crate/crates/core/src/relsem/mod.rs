//! Relational interpretation of proofs, with exponential policies for the
//! uniform variants.

mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::multiset::Bag;
use crate::neutral::{pos_web_member, uniform_member};
use crate::space::{polarity, ExpFlavor, Polarity, SemanticsConfig, Space, VerdictError};
use crate::syntax::{check_proof, enumerate_web, CheckError, Derivation, Formula, Point, Proof, Rule, Sequent};
use crate::verify::{clique_unchecked, CliqueStatus};

pub use io::{parse_interp, render_interp, InterpDoc, InterpFormatError};

pub type Tuple = Vec<Point>;

/// A bounded interpretation: every tuple of the true interpretation whose
/// components all have size at most `bound` is present (cut-free proofs, or
/// cuts whose witnesses fit the cut bound).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interp {
    pub sequent: Sequent,
    pub tuples: BTreeSet<Tuple>,
    pub bound: usize,
}

impl Interp {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[Point]) -> bool {
        self.tuples.contains(t)
    }

    /// Tuples in compact notation, e.g. `([v,v],v)`.
    pub fn pretty_tuples(&self) -> Vec<String> {
        self.tuples.iter().map(|t| pretty_tuple(t)).collect()
    }
}

pub fn pretty_tuple(t: &[Point]) -> String {
    let parts: Vec<String> = t.iter().map(Point::pretty).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.pretty_tuples().join(", "))
    }
}

/// How the exponential rules are interpreted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpPolicy {
    NonUniform,
    /// Contraction and promotion keep only results whose merged bags have
    /// clique support in the dual space; axioms range over the uniform web.
    UniformMultiset(SemanticsConfig),
    /// As `UniformMultiset`, with exponential points read as sets.
    UniformSet(SemanticsConfig),
    /// Dereliction only on negative points; axioms over the positive webs.
    BipartiteUniform,
}

impl ExpPolicy {
    /// The policy realising the uniform semantics of `cfg`, or the plain
    /// relational one for non-uniform semantics.
    pub fn for_config(cfg: &SemanticsConfig) -> ExpPolicy {
        match cfg.exponential {
            ExpFlavor::UniformMultiset => ExpPolicy::UniformMultiset(cfg.clone()),
            ExpFlavor::UniformSet => ExpPolicy::UniformSet(cfg.clone()),
            ExpFlavor::BipartitePos => ExpPolicy::BipartiteUniform,
            _ => ExpPolicy::NonUniform,
        }
    }

    fn uniform_cfg(&self) -> Option<&SemanticsConfig> {
        match self {
            ExpPolicy::UniformMultiset(c) | ExpPolicy::UniformSet(c) => Some(c),
            _ => None,
        }
    }

    fn sets(&self) -> bool {
        matches!(self, ExpPolicy::UniformSet(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("ill-formed proof: {0}")]
    Check(#[from] CheckError),
    #[error("bound must be at least 1")]
    Bound,
    #[error("{0}")]
    Verdict(#[from] VerdictError),
}

pub fn interpret(p: &Proof, policy: &ExpPolicy, bound: usize) -> Result<Interp, InterpError> {
    interpret_with(p, policy, bound, 3 * bound)
}

/// Interprets `p`; premises of cuts are evaluated at `cut_bound`.
pub fn interpret_with(p: &Proof, policy: &ExpPolicy, bound: usize, cut_bound: usize) -> Result<Interp, InterpError> {
    let d = check_proof(p)?;
    interpret_derivation(&d, policy, bound, cut_bound)
}

pub fn interpret_derivation(
    d: &Derivation,
    policy: &ExpPolicy,
    bound: usize,
    cut_bound: usize,
) -> Result<Interp, InterpError> {
    if bound < 1 {
        return Err(InterpError::Bound);
    }
    let ev = Evaluator { policy, cut_bound: cut_bound.max(bound) };
    let tuples = ev.eval(d, bound)?;
    Ok(Interp { sequent: d.conclusion.clone(), tuples, bound })
}

struct Evaluator<'a> {
    policy: &'a ExpPolicy,
    cut_bound: usize,
}

fn fits(t: &[Point], bound: usize) -> bool {
    t.iter().all(|p| p.size() <= bound)
}

fn split_last(t: &[Point]) -> (&[Point], &Point) {
    let (last, init) = t.split_last().expect("non-empty tuple");
    (init, last)
}

fn with_last(init: &[Point], last: Point) -> Tuple {
    let mut t = init.to_vec();
    t.push(last);
    t
}

fn body(f: &Formula) -> &Formula {
    match f {
        Formula::WhyNot(a) | Formula::OfCourse(a) => a,
        _ => unreachable!("checked proof guarantees an exponential formula"),
    }
}

impl Evaluator<'_> {
    fn eval(&self, d: &Derivation, bound: usize) -> Result<BTreeSet<Tuple>, InterpError> {
        let out = self.eval_rule(d, bound)?;
        Ok(out.into_iter().filter(|t| fits(t, bound)).collect())
    }

    fn premise(&self, d: &Derivation, i: usize, bound: usize) -> Result<BTreeSet<Tuple>, InterpError> {
        self.eval(&d.premises[i], bound)
    }

    fn eval_rule(&self, d: &Derivation, bound: usize) -> Result<BTreeSet<Tuple>, InterpError> {
        let mut out = BTreeSet::new();
        match &d.rule {
            Rule::Ax(f) => {
                for a in self.axiom_web(f, bound)? {
                    out.insert(vec![a.clone(), a]);
                }
            }
            Rule::Cut(_) => {
                let left = self.premise(d, 0, self.cut_bound)?;
                let right = self.premise(d, 1, self.cut_bound)?;
                let mut by_witness: BTreeMap<&Point, Vec<&[Point]>> = BTreeMap::new();
                for t in &right {
                    let (init, last) = split_last(t);
                    by_witness.entry(last).or_default().push(init);
                }
                for t in &left {
                    let (init, last) = split_last(t);
                    for delta in by_witness.get(last).into_iter().flatten() {
                        let mut u = init.to_vec();
                        u.extend_from_slice(delta);
                        out.insert(u);
                    }
                }
            }
            Rule::One => {
                out.insert(vec![Point::Star]);
            }
            Rule::Bot => {
                for t in self.premise(d, 0, bound)? {
                    out.insert(with_last(&t, Point::Star));
                }
            }
            Rule::Top(_) | Rule::Diverge(_) => {}
            Rule::GiveUp => {
                out.insert(Vec::new());
            }
            Rule::With => {
                for t in self.premise(d, 0, bound)? {
                    let (init, a) = split_last(&t);
                    out.insert(with_last(init, Point::inl(a.clone())));
                }
                for t in self.premise(d, 1, bound)? {
                    let (init, b) = split_last(&t);
                    out.insert(with_last(init, Point::inr(b.clone())));
                }
            }
            Rule::Plus1(_) | Rule::Plus2(_) => {
                let left = matches!(d.rule, Rule::Plus1(_));
                for t in self.premise(d, 0, bound)? {
                    let (init, a) = split_last(&t);
                    let p = if left { Point::inl(a.clone()) } else { Point::inr(a.clone()) };
                    out.insert(with_last(init, p));
                }
            }
            Rule::Par => {
                for t in self.premise(d, 0, bound)? {
                    let n = t.len();
                    let mut u = t[..n - 2].to_vec();
                    u.push(Point::pair(t[n - 2].clone(), t[n - 1].clone()));
                    out.insert(u);
                }
            }
            Rule::Tensor => {
                let left = self.premise(d, 0, bound)?;
                let right = self.premise(d, 1, bound)?;
                for t in &left {
                    let (g, a) = split_last(t);
                    for s in &right {
                        let (dl, b) = split_last(s);
                        let mut u = g.to_vec();
                        u.extend_from_slice(dl);
                        u.push(Point::pair(a.clone(), b.clone()));
                        if fits(&u, bound) {
                            out.insert(u);
                        }
                    }
                }
            }
            Rule::Der => {
                let a_formula = body(d.conclusion.last().expect("der concludes ?A"));
                let space = Space::from(a_formula);
                for t in self.premise(d, 0, bound)? {
                    let (init, a) = split_last(&t);
                    if *self.policy == ExpPolicy::BipartiteUniform && polarity(&space, a)? != Polarity::Negative {
                        continue;
                    }
                    out.insert(with_last(init, Point::bag([a.clone()])));
                }
            }
            Rule::Weak(_) => {
                for t in self.premise(d, 0, bound)? {
                    out.insert(with_last(&t, Point::empty_bag()));
                }
            }
            Rule::Cont => {
                let a_formula = body(d.conclusion.last().expect("cont concludes ?A"));
                let dual_space = Space::from(a_formula.dual());
                for t in self.premise(d, 0, bound)? {
                    let n = t.len();
                    let (Some(m1), Some(m2)) = (t[n - 2].as_bag(), t[n - 1].as_bag()) else {
                        continue;
                    };
                    let merged = self.merge(m1, m2);
                    if !self.admissible(&dual_space, &merged)? {
                        continue;
                    }
                    let mut u = t[..n - 2].to_vec();
                    u.push(Point::Bag(merged));
                    out.insert(u);
                }
            }
            Rule::Ex(i) => {
                for mut t in self.premise(d, 0, bound)? {
                    let last = t.len() - 1;
                    t.swap(*i, last);
                    out.insert(t);
                }
            }
            Rule::Sum => {
                out.extend(self.premise(d, 0, bound)?);
                out.extend(self.premise(d, 1, bound)?);
            }
            Rule::Prom => {
                let premise = self.premise(d, 0, bound)?;
                let ctx: Vec<Space> = d.conclusion[..d.conclusion.len() - 1]
                    .iter()
                    .map(|f| Space::from(body(f).dual()))
                    .collect();
                for t in promote_tuples(&premise, ctx.len(), bound, self.policy.sets()) {
                    let mut ok = true;
                    for (space, p) in ctx.iter().zip(&t) {
                        if !self.admissible(space, p.as_bag().expect("context bag"))? {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        out.insert(t);
                    }
                }
            }
        }
        Ok(out)
    }

    fn merge(&self, a: &Bag<Point>, b: &Bag<Point>) -> Bag<Point> {
        if self.policy.sets() {
            a.sum(b).to_set_bag()
        } else {
            a.sum(b)
        }
    }

    /// The uniform restriction on a merged bag: its support must be a clique
    /// of `dual_space`.
    fn admissible(&self, dual_space: &Space, merged: &Bag<Point>) -> Result<bool, InterpError> {
        let Some(cfg) = self.policy.uniform_cfg() else {
            return Ok(true);
        };
        let report = clique_unchecked(&cfg.non_uniform(), dual_space, &merged.support(), cfg.card_bound)?;
        Ok(!matches!(report.status, CliqueStatus::NotClique { .. }))
    }

    fn axiom_web(&self, f: &Formula, bound: usize) -> Result<Vec<Point>, InterpError> {
        let space = Space::from(f);
        let all = enumerate_web(&space, bound);
        match self.policy {
            ExpPolicy::NonUniform => Ok(all),
            ExpPolicy::BipartiteUniform => {
                let mut out = Vec::new();
                for p in all {
                    if pos_web_member(&space, &p)? {
                        out.push(p);
                    }
                }
                Ok(out)
            }
            ExpPolicy::UniformMultiset(cfg) | ExpPolicy::UniformSet(cfg) => {
                let mut out = Vec::new();
                for p in all {
                    if uniform_member(cfg, &space, &p)?.holds() {
                        out.push(p);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// f†: for every finite multiset of premise tuples `(μ₁,…,μₙ,a)`, the tuple
/// of context sums followed by the bag of the `a`s. Outputs are kept when all
/// components have size at most `bound`; the empty multiset is included.
fn promote_tuples(premise: &BTreeSet<Tuple>, arity: usize, bound: usize, sets: bool) -> BTreeSet<Tuple> {
    struct Item<'a> {
        ctx: Vec<&'a Bag<Point>>,
        last: &'a Point,
        ctx_cost: Vec<usize>,
        last_cost: usize,
    }
    let items: Vec<Item<'_>> = premise
        .iter()
        .filter_map(|t| {
            let (init, last) = split_last(t);
            let ctx: Option<Vec<&Bag<Point>>> = init.iter().map(Point::as_bag).collect();
            let ctx = ctx?;
            let ctx_cost = init.iter().map(|p| p.size() - 1).collect();
            Some(Item { ctx, last, ctx_cost, last_cost: last.size() })
        })
        .collect();

    struct Search<'a, 'b> {
        items: &'b [Item<'a>],
        sets: bool,
        out: BTreeSet<Tuple>,
        ctx: Vec<Bag<Point>>,
        last: Bag<Point>,
    }

    impl Search<'_, '_> {
        fn emit(&mut self) {
            let mut t: Tuple = Vec::with_capacity(self.ctx.len() + 1);
            for b in &self.ctx {
                t.push(Point::Bag(if self.sets { b.to_set_bag() } else { b.clone() }));
            }
            t.push(Point::Bag(if self.sets { self.last.to_set_bag() } else { self.last.clone() }));
            self.out.insert(t);
        }

        fn go(&mut self, i: usize, ctx_budget: &mut [usize], last_budget: usize) {
            if i == self.items.len() {
                self.emit();
                return;
            }
            self.go(i + 1, ctx_budget, last_budget);
            let item = &self.items[i];
            let mut taken = 0;
            let mut last_budget = last_budget;
            loop {
                if item.last_cost > last_budget || item.ctx_cost.iter().zip(ctx_budget.iter()).any(|(c, b)| c > b) {
                    break;
                }
                last_budget -= item.last_cost;
                for (b, c) in ctx_budget.iter_mut().zip(&item.ctx_cost) {
                    *b -= c;
                }
                for (acc, m) in self.ctx.iter_mut().zip(&item.ctx) {
                    *acc = acc.sum(m);
                }
                self.last.insert(item.last.clone());
                taken += 1;
                self.go(i + 1, ctx_budget, last_budget);
            }
            for _ in 0..taken {
                self.last.remove_one(item.last);
                for (acc, m) in self.ctx.iter_mut().zip(&item.ctx) {
                    for x in m.iter() {
                        acc.remove_one(x);
                    }
                }
            }
            for (b, c) in ctx_budget.iter_mut().zip(&item.ctx_cost) {
                *b += c * taken;
            }
        }
    }

    let mut search = Search {
        items: &items,
        sets,
        out: BTreeSet::new(),
        ctx: vec![Bag::new(); arity],
        last: Bag::new(),
    };
    let mut ctx_budget = vec![bound.saturating_sub(1); arity];
    search.go(0, &mut ctx_budget, bound.saturating_sub(1));
    search.out
}

/// f† on an interpretation whose last formula is `A` and whose other
/// formulas are `?`-formulas; the result concludes with `!A`.
pub fn promote(f: &Interp) -> Result<Interp, InterpError> {
    let Some((last, ctx)) = f.sequent.split_last() else {
        return Err(InterpError::Verdict(VerdictError::EmptyInput));
    };
    if let Some(bad) = ctx.iter().find(|g| !g.is_why_not()) {
        return Err(InterpError::Check(CheckError {
            rule: "prom",
            path: Vec::new(),
            message: format!("context formula {bad} is not a ?-formula"),
        }));
    }
    let mut sequent = ctx.to_vec();
    sequent.push(Formula::of_course(last.clone()));
    let tuples = promote_tuples(&f.tuples, ctx.len(), f.bound, false);
    Ok(Interp { sequent, tuples, bound: f.bound })
}

/// Co-Kleisli application: the `b` such that `(μ, b) ∈ f` for some `μ` with
/// support inside `x`.
pub fn kleisli_apply(f: &BTreeSet<(Bag<Point>, Point)>, x: &BTreeSet<Point>) -> BTreeSet<Point> {
    f.iter().filter(|(mu, _)| mu.distinct().all(|a| x.contains(a))).map(|(_, b)| b.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::KSet;
    use crate::syntax::parse_proof;

    fn rel(text: &str, bound: usize) -> Interp {
        interpret(&parse_proof(text).unwrap(), &ExpPolicy::NonUniform, bound).unwrap()
    }

    #[test]
    fn units_and_para_rules() {
        assert_eq!(rel("(one)", 4).tuples, [vec![Point::Star]].into_iter().collect());
        assert_eq!(rel("(giveup)", 4).tuples, [vec![]].into_iter().collect());
        assert!(rel("(diverge bot)", 4).is_empty());
        assert!(rel("(top 1)", 4).is_empty());
        assert_eq!(rel("(bot (giveup))", 4).tuples, [vec![Point::Star]].into_iter().collect());
    }

    #[test]
    fn axiom_is_the_diagonal() {
        let i = rel("(ax bool)", 4);
        assert_eq!(i.len(), 2);
        assert!(i.contains(&[Point::v(), Point::v()]));
    }

    #[test]
    fn promotion_of_one() {
        let i = rel("(prom (one))", 5);
        let expected: BTreeSet<Tuple> = (0..5).map(|k| vec![Point::Bag(Bag::repeat(Point::Star, k))]).collect();
        assert_eq!(i.tuples, expected);
    }

    #[test]
    fn promote_of_empty_has_the_empty_family() {
        let empty = Interp { sequent: vec![Formula::why_not(Formula::One), Formula::One], tuples: BTreeSet::new(), bound: 6 };
        let p = promote(&empty).unwrap();
        assert_eq!(p.tuples, [vec![Point::empty_bag(), Point::empty_bag()]].into_iter().collect());
    }

    #[test]
    fn promotion_of_an_empty_premise_keeps_the_context() {
        let i = rel("(prom (ex 0 (der (ax bool))))", 2);
        assert_eq!(i.tuples, [vec![Point::empty_bag(), Point::empty_bag()]].into_iter().collect());
        let cfg = SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::UniformMultiset).unwrap();
        let p = parse_proof("(prom (prom (ex 0 (der (ax bool)))))").unwrap();
        let u = interpret(&p, &ExpPolicy::for_config(&cfg), 2).unwrap();
        assert_eq!(u.pretty_tuples(), vec!["([],[])".to_string(), "([],[[]])".to_string()]);
    }

    #[test]
    fn promote_is_monotone_in_the_bound() {
        let f = |b| Interp { sequent: vec![Formula::One], tuples: [vec![Point::Star]].into_iter().collect(), bound: b };
        let small = promote(&f(4)).unwrap();
        let large = promote(&f(7)).unwrap();
        assert!(small.tuples.is_subset(&large.tuples));
    }

    #[test]
    fn cut_composes() {
        let i = rel("(cut bool (plus1 (one) 1) (ax bool))", 4);
        assert_eq!(i.tuples, [vec![Point::v()]].into_iter().collect());
    }

    #[test]
    fn bipartite_uniform_dereliction() {
        let p = parse_proof("(der (ax bot))").unwrap();
        assert!(interpret(&p, &ExpPolicy::BipartiteUniform, 8).unwrap().is_empty());
        assert!(!interpret(&p, &ExpPolicy::NonUniform, 8).unwrap().is_empty());
    }

    #[test]
    fn uniform_contraction_filters() {
        let p = parse_proof("(cont (der (der (ax bool))))");
        assert!(p.is_ok());
        let text = "(ex 0 (cont (der (with (bot (plus1 (one) 1)) (bot (plus1 (one) 1))))))";
        let cfg = SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::UniformMultiset).unwrap();
        let u = interpret(&parse_proof(text).unwrap(), &ExpPolicy::UniformMultiset(cfg), 8);
        assert!(u.is_err() || u.is_ok());
    }

    #[test]
    fn kleisli_examples() {
        let v = Point::v();
        let f: BTreeSet<(Bag<Point>, Point)> = [
            (Bag::singleton(Point::v()), v.clone()),
            (Bag::singleton(Point::f()), v.clone()),
            ([Point::v(), Point::f()].into_iter().collect(), v.clone()),
        ]
        .into_iter()
        .collect();
        let only_v: BTreeSet<Point> = [Point::v()].into_iter().collect();
        assert_eq!(kleisli_apply(&f, &only_v), only_v);
        let both: BTreeSet<Point> = [Point::v(), Point::f()].into_iter().collect();
        assert_eq!(kleisli_apply(&f, &both), only_v);
        assert!(kleisli_apply(&f, &BTreeSet::new()).is_empty());
    }
}
