//! Bounded checks of the exponential structure: cliquehood of the structural
//! morphisms, comonad and naturality equations, Seely isomorphisms, the
//! inclusions between the indexed and co-free exponentials, and the
//! factorization through free comonoids.
//!
//! Morphisms are relations between webs. Composition is diagrammatic:
//! `f ; g` relates `a` to `c` when `f` relates `a` to some `b` and `g`
//! relates `b` to `c`.

use std::collections::BTreeSet;
use std::rc::Rc;
use std::sync::Arc;

use super::clique::{is_clique, CliqueStatus};
use super::Status;
use crate::multiset::{bags_of_size, Bag};
use crate::space::{verdict_unchecked, ExpFlavor, KSet, SemanticsConfig, Space, TableSpace, Verdict, VerdictError};
use crate::syntax::{enumerate_web, Formula, Point};

type Image = Rc<dyn Fn(&Point, usize) -> BTreeSet<Point>>;

/// A relation from the web of `src` to the web of `tgt`, given by its
/// images: `img(a, n)` holds the related points of size at most `n`.
#[derive(Clone)]
pub struct Morph {
    pub name: String,
    pub src: Formula,
    pub tgt: Formula,
    img: Image,
}

impl Morph {
    pub fn new<F>(name: &str, src: Formula, tgt: Formula, img: F) -> Morph
    where
        F: Fn(&Point, usize) -> BTreeSet<Point> + 'static,
    {
        Morph { name: name.into(), src, tgt, img: Rc::new(img) }
    }

    /// A finite relation given by its pairs.
    pub fn from_pairs(name: &str, src: Formula, tgt: Formula, pairs: &[(Point, Point)]) -> Morph {
        let pairs = pairs.to_vec();
        Morph::new(name, src, tgt, move |a, n| {
            pairs.iter().filter(|(x, y)| x == a && y.size() <= n).map(|(_, y)| y.clone()).collect()
        })
    }

    pub fn image(&self, a: &Point, n: usize) -> BTreeSet<Point> {
        (self.img)(a, n)
    }

    pub fn id(x: &Formula) -> Morph {
        Morph::new("id", x.clone(), x.clone(), |a, n| singleton_if(a.clone(), n))
    }

    /// `f ; g`, with intermediate points up to size `witness`.
    pub fn then(&self, g: &Morph, witness: usize) -> Morph {
        let f = self.clone();
        let g2 = g.clone();
        Morph::new(
            &format!("{};{}", self.name, g.name),
            self.src.clone(),
            g.tgt.clone(),
            move |a, n| f.image(a, witness).iter().flat_map(|b| g2.image(b, n)).collect(),
        )
    }

    pub fn tensor(&self, g: &Morph) -> Morph {
        let f = self.clone();
        let g2 = g.clone();
        Morph::new(
            &format!("({}⊗{})", self.name, g.name),
            Formula::tensor(self.src.clone(), g.src.clone()),
            Formula::tensor(self.tgt.clone(), g.tgt.clone()),
            move |p, n| {
                let Some((a, b)) = p.as_pair() else { return BTreeSet::new() };
                let mut out = BTreeSet::new();
                for x in f.image(a, n) {
                    for y in g2.image(b, n.saturating_sub(x.size())) {
                        let q = Point::pair(x.clone(), y);
                        if q.size() <= n {
                            out.insert(q);
                        }
                    }
                }
                out
            },
        )
    }

    /// `!f`: `[a1..ak]` to every `[b1..bk]` with each `bi` an image of `ai`.
    pub fn bang(&self) -> Morph {
        let f = self.clone();
        Morph::new(
            &format!("!{}", self.name),
            Formula::of_course(self.src.clone()),
            Formula::of_course(self.tgt.clone()),
            move |p, n| {
                let Some(mu) = p.as_bag() else { return BTreeSet::new() };
                let elems = mu.to_vec();
                let mut out = BTreeSet::new();
                bang_rec(&f, &elems, Bag::new(), 1, n, &mut out);
                out
            },
        )
    }

    /// The pairs `(a, b)` with `a` among `sources` and `b` of size at most `n`.
    pub fn graph(&self, sources: &[Point], n: usize) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for a in sources {
            for b in self.image(a, n) {
                out.insert(Point::pair(a.clone(), b));
            }
        }
        out
    }
}

fn bang_rec(f: &Morph, rest: &[Point], acc: Bag<Point>, size: usize, n: usize, out: &mut BTreeSet<Point>) {
    let Some((a, tail)) = rest.split_first() else {
        out.insert(Point::Bag(acc));
        return;
    };
    let remaining_min = tail.len();
    for b in f.image(a, n.saturating_sub(size + remaining_min)) {
        let s = size + b.size();
        if s + remaining_min > n {
            continue;
        }
        let mut next = acc.clone();
        next.insert(b);
        bang_rec(f, tail, next, s, n, out);
    }
}

fn singleton_if(p: Point, n: usize) -> BTreeSet<Point> {
    if p.size() <= n {
        [p].into_iter().collect()
    } else {
        BTreeSet::new()
    }
}

/// `der_X : !X → X`.
pub fn der(x: &Formula) -> Morph {
    Morph::new("der", Formula::of_course(x.clone()), x.clone(), |p, n| match p.as_bag() {
        Some(mu) if mu.len() == 1 => mu.iter().map(|a| singleton_if(a.clone(), n)).next().unwrap_or_default(),
        _ => BTreeSet::new(),
    })
}

/// `dig_X : !X → !!X`, `Σμᵢ` to `[μ1..μk]`.
pub fn dig(x: &Formula) -> Morph {
    let bx = Formula::of_course(x.clone());
    Morph::new("dig", bx.clone(), Formula::of_course(bx), |p, n| {
        let Some(mu) = p.as_bag() else { return BTreeSet::new() };
        bag_partitions(mu, n).into_iter().map(|b| Point::Bag(b.map(|m| Point::Bag(m.clone())))).collect()
    })
}

/// `weak_X : !X → 1`.
pub fn weak(x: &Formula) -> Morph {
    Morph::new("weak", Formula::of_course(x.clone()), Formula::One, |p, n| match p.as_bag() {
        Some(mu) if mu.is_empty() => singleton_if(Point::Star, n),
        _ => BTreeSet::new(),
    })
}

/// `cont_X : !X → !X ⊗ !X`, `μ + ν` to `(μ, ν)`.
pub fn cont(x: &Formula) -> Morph {
    let bx = Formula::of_course(x.clone());
    Morph::new("cont", bx.clone(), Formula::tensor(bx.clone(), bx), |p, n| {
        let Some(mu) = p.as_bag() else { return BTreeSet::new() };
        mu.sub_bags()
            .into_iter()
            .map(|nu| Point::pair(Point::Bag(nu.clone()), Point::Bag(mu.difference(&nu))))
            .filter(|q| q.size() <= n)
            .collect()
    })
}

/// Seely map `!(A&B) → !A ⊗ !B` splitting a bag by sides.
pub fn seely(a: &Formula, b: &Formula) -> Morph {
    Morph::new(
        "seely",
        Formula::of_course(Formula::with(a.clone(), b.clone())),
        Formula::tensor(Formula::of_course(a.clone()), Formula::of_course(b.clone())),
        |p, n| {
            let Some(mu) = p.as_bag() else { return BTreeSet::new() };
            let mut l = Bag::new();
            let mut r = Bag::new();
            for (q, c) in mu.counts() {
                match q {
                    Point::Inl(x) => l.insert_many((**x).clone(), c),
                    Point::Inr(x) => r.insert_many((**x).clone(), c),
                    _ => return BTreeSet::new(),
                }
            }
            singleton_if(Point::pair(Point::Bag(l), Point::Bag(r)), n)
        },
    )
}

/// Inverse Seely map `!A ⊗ !B → !(A&B)`.
pub fn seely_inv(a: &Formula, b: &Formula) -> Morph {
    Morph::new(
        "seely⁻¹",
        Formula::tensor(Formula::of_course(a.clone()), Formula::of_course(b.clone())),
        Formula::of_course(Formula::with(a.clone(), b.clone())),
        |p, n| {
            let Some((Point::Bag(l), Point::Bag(r))) = p.as_pair() else { return BTreeSet::new() };
            let merged = l.map(|x| Point::inl(x.clone())).sum(&r.map(|x| Point::inr(x.clone())));
            singleton_if(Point::Bag(merged), n)
        },
    )
}

/// Multisets of bags summing to `mu`, empty bags included, whose point has
/// size at most `max`.
pub fn bag_partitions(mu: &Bag<Point>, max: usize) -> Vec<Bag<Bag<Point>>> {
    fn go(rest: &Bag<Point>, min: Option<&Bag<Point>>, acc: &mut Vec<Bag<Point>>, out: &mut Vec<Vec<Bag<Point>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for part in rest.sub_bags() {
            if part.is_empty() || min.is_some_and(|m| part < *m) {
                continue;
            }
            let remaining = rest.difference(&part);
            acc.push(part.clone());
            go(&remaining, Some(&part), acc, out);
            acc.pop();
        }
    }
    let base: usize = mu.counts().map(|(p, c)| c * p.size()).sum();
    let mut parts = Vec::new();
    go(mu, None, &mut Vec::new(), &mut parts);
    let mut out = Vec::new();
    for ps in parts {
        let mut size = 1 + base + ps.len();
        let mut b: Bag<Bag<Point>> = ps.into_iter().collect();
        while size <= max {
            out.push(b.clone());
            b.insert(Bag::new());
            size += 1;
        }
    }
    out
}

/// A commutative comonoid in the category of relations.
#[derive(Clone)]
pub struct Comonoid {
    pub name: String,
    pub carrier: Formula,
    pub counit: Morph,
    pub comult: Morph,
}

impl Comonoid {
    pub fn unit() -> Comonoid {
        let one = Formula::One;
        Comonoid {
            name: "1".into(),
            carrier: one.clone(),
            counit: Morph::from_pairs("u", one.clone(), Formula::One, &[(Point::Star, Point::Star)]),
            comult: Morph::from_pairs(
                "μ",
                one.clone(),
                Formula::tensor(one.clone(), one),
                &[(Point::Star, Point::pair(Point::Star, Point::Star))],
            ),
        }
    }

    /// The diagonal comonoid on `bool`.
    pub fn diagonal_bool() -> Comonoid {
        let b = Formula::bool();
        let pts = [Point::v(), Point::f()];
        let u: Vec<(Point, Point)> = pts.iter().map(|p| (p.clone(), Point::Star)).collect();
        let m: Vec<(Point, Point)> = pts.iter().map(|p| (p.clone(), Point::pair(p.clone(), p.clone()))).collect();
        Comonoid {
            name: "diag(bool)".into(),
            carrier: b.clone(),
            counit: Morph::from_pairs("u", b.clone(), Formula::One, &u),
            comult: Morph::from_pairs("μ", b.clone(), Formula::tensor(b.clone(), b), &m),
        }
    }

    /// `!X` with weakening and contraction.
    pub fn exponential(x: &Formula) -> Comonoid {
        Comonoid {
            name: format!("!{x}"),
            carrier: Formula::of_course(x.clone()),
            counit: weak(x),
            comult: cont(x),
        }
    }

    /// `(id)★ : M → !M`: `a` to `[b1..bk]` when the k-fold comultiplication
    /// relates `a` to `(b1,…,bk)`.
    pub fn lift(&self) -> Morph {
        let me = self.clone();
        Morph::new("id★", self.carrier.clone(), Formula::of_course(self.carrier.clone()), move |a, n| {
            let mut out = BTreeSet::new();
            for k in 0..n {
                for s in me.sequences(a, k, n) {
                    let p = Point::bag(s);
                    if p.size() <= n {
                        out.insert(p);
                    }
                }
            }
            out
        })
    }

    fn sequences(&self, a: &Point, k: usize, n: usize) -> Vec<Vec<Point>> {
        match k {
            0 => {
                if self.counit.image(a, 1).contains(&Point::Star) {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            }
            1 => vec![vec![a.clone()]],
            _ => {
                let mut out = Vec::new();
                for q in self.comult.image(a, 2 * n + 1) {
                    let Some((c, d)) = q.as_pair() else { continue };
                    for mut rest in self.sequences(d, k - 1, n) {
                        rest.insert(0, c.clone());
                        out.push(rest);
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawRecord {
    pub id: String,
    pub semantics: String,
    pub status: Status,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawsReport {
    pub records: Vec<LawRecord>,
}

impl LawsReport {
    pub fn failures(&self) -> Vec<&LawRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn count(&self, prefix: &str) -> usize {
        self.records.iter().filter(|r| r.id.starts_with(prefix)).count()
    }

    fn push(&mut self, id: String, semantics: &str, status: Status, witness: Option<String>) {
        self.records.push(LawRecord { id, semantics: semantics.into(), status, witness });
    }

    fn equation(&mut self, id: String, lhs: &Morph, rhs: &Morph, sources: &[Point], n: usize) {
        let mut witness = None;
        for a in sources {
            let l = lhs.image(a, n);
            let r = rhs.image(a, n);
            if l != r {
                let extra = l.symmetric_difference(&r).next().map(Point::pretty).unwrap_or_default();
                witness = Some(format!("{} ↦ {}", a.pretty(), extra));
                break;
            }
        }
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.push(id, "relational", status, witness);
    }

    fn clique(&mut self, id: String, cfg: &SemanticsConfig, f: &Morph, sources: &[Point], n: usize, card_bound: usize) {
        let space = Space::lolli(Space::from(&f.src), Space::from(&f.tgt));
        let graph = f.graph(sources, n);
        let (status, witness) = match is_clique(cfg, &space, &graph, card_bound) {
            Ok(r) => match r.status {
                CliqueStatus::Clique => (Status::Pass, None),
                CliqueStatus::CliqueUpToBound(_) => (Status::Bounded, None),
                CliqueStatus::NotClique { witness, .. } => (Status::Fail, Some(Point::Bag(witness).pretty())),
            },
            Err(VerdictError::Budget(e)) => (Status::Bounded, Some(e.to_string())),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        self.push(id, &cfg.to_string(), status, witness);
    }
}

/// Options of [`laws_suite`].
#[derive(Debug, Clone)]
pub struct LawsOptions {
    /// Largest point size on either side of a checked relation.
    pub bound: usize,
    pub card_bound: usize,
    pub semantics: Vec<SemanticsConfig>,
}

impl Default for LawsOptions {
    fn default() -> Self {
        LawsOptions { bound: 5, card_bound: 3, semantics: default_semantics() }
    }
}

/// The non-uniform semantics under which cliquehood is checked.
pub fn default_semantics() -> Vec<SemanticsConfig> {
    let k23 = KSet::finite([2, 3]).expect("valid");
    let m = |k: KSet, e| SemanticsConfig::multiset(k, e).expect("valid");
    vec![
        SemanticsConfig::relational(),
        SemanticsConfig::bipartite(false),
        m(KSet::PairOnly, ExpFlavor::CoFree),
        m(k23.clone(), ExpFlavor::CoFree),
        m(KSet::AllGe2, ExpFlavor::CoFree),
        m(KSet::PairOnly, ExpFlavor::Indexed),
        m(k23, ExpFlavor::Indexed),
        SemanticsConfig::hyper(ExpFlavor::NonUniformHyper).expect("valid"),
    ]
}

/// Sample cliques `g : X → Y` used for naturality and `!g`.
pub fn sample_morphisms() -> Vec<Morph> {
    let b = Formula::bool;
    let (v, f) = (Point::v(), Point::f());
    let pair = Point::pair;
    vec![
        Morph::from_pairs("id_bool", b(), b(), &[(v.clone(), v.clone()), (f.clone(), f.clone())]),
        Morph::from_pairs("not", b(), b(), &[(v.clone(), f.clone()), (f.clone(), v.clone())]),
        Morph::from_pairs("const_v", b(), b(), &[(v.clone(), v.clone()), (f.clone(), v.clone())]),
        Morph::from_pairs("true", Formula::One, b(), &[(Point::Star, v.clone())]),
        Morph::from_pairs(
            "and",
            Formula::tensor(b(), b()),
            b(),
            &[
                (pair(v.clone(), v.clone()), v.clone()),
                (pair(v.clone(), f.clone()), f.clone()),
                (pair(f.clone(), v.clone()), f.clone()),
                (pair(f.clone(), f.clone()), f.clone()),
            ],
        ),
        Morph::from_pairs(
            "proj",
            Formula::tensor(Formula::One, b()),
            b(),
            &[(pair(Point::Star, v.clone()), v.clone()), (pair(Point::Star, f.clone()), f.clone())],
        ),
    ]
}

fn web(f: &Formula, n: usize) -> Vec<Point> {
    enumerate_web(&Space::from(f), n)
}

/// Runs every law check; relation equalities are compared on points of size
/// at most `opts.bound`, with intermediate witnesses up to three times that.
pub fn laws_suite(opts: &LawsOptions) -> LawsReport {
    let mut rep = LawsReport::default();
    let n = opts.bound;
    let w = 3 * n;
    let bases = [Formula::bool(), Formula::One];

    for x in &bases {
        let bx = Formula::of_course(x.clone());
        let src = web(&bx, n);
        rep.equation(format!("comonad/dig;der!={x}"), &dig(x).then(&der(&bx), w), &Morph::id(&bx), &src, n);
        rep.equation(format!("comonad/dig;!der={x}"), &dig(x).then(&der(x).bang(), w), &Morph::id(&bx), &src, n);
        rep.equation(
            format!("comonad/dig-coassoc={x}"),
            &dig(x).then(&dig(&bx), w),
            &dig(x).then(&dig(x).bang(), w),
            &src,
            n,
        );
        for cfg in &opts.semantics {
            for (name, m) in [("der", der(x)), ("dig", dig(x)), ("weak", weak(x)), ("cont", cont(x))] {
                rep.clique(format!("clique/{name}={x}"), cfg, &m, &src, n, opts.card_bound);
            }
        }
    }

    for g in sample_morphisms() {
        let src = web(&Formula::of_course(g.src.clone()), n);
        rep.equation(
            format!("natural/der={}", g.name),
            &der(&g.src).then(&g, w),
            &g.bang().then(&der(&g.tgt), w),
            &src,
            n,
        );
        rep.equation(
            format!("natural/dig={}", g.name),
            &dig(&g.src).then(&g.bang().bang(), w),
            &g.bang().then(&dig(&g.tgt), w),
            &src,
            n,
        );
        let base_src = web(&g.src, n);
        for cfg in &opts.semantics {
            rep.clique(format!("clique/g={}", g.name), cfg, &g, &base_src, n, opts.card_bound);
            rep.clique(format!("clique/!g={}", g.name), cfg, &g.bang(), &src, n, opts.card_bound);
        }
    }

    seely_checks(&mut rep, opts);
    indexed_implies_cofree(&mut rep);
    for c in [Comonoid::unit(), Comonoid::diagonal_bool(), Comonoid::exponential(&Formula::bool()), Comonoid::exponential(&Formula::One)] {
        comonoid_checks(&mut rep, &c, opts);
    }
    rep
}

fn seely_checks(rep: &mut LawsReport, opts: &LawsOptions) {
    let n = opts.bound + 2;
    let w = 3 * n;
    let pairs = [(Formula::One, Formula::One), (Formula::bool(), Formula::One)];
    for (a, b) in &pairs {
        let s = seely(a, b);
        let si = seely_inv(a, b);
        let left = web(&s.src, n);
        let right = web(&si.src, n);
        rep.equation(format!("seely/iso-left={a},{b}"), &s.then(&si, w), &Morph::id(&s.src), &left, n);
        rep.equation(format!("seely/iso-right={a},{b}"), &si.then(&s, w), &Morph::id(&si.src), &right, n);
        for cfg in &opts.semantics {
            rep.clique(format!("seely/clique={a},{b}"), cfg, &s, &left, n, opts.card_bound);
            rep.clique(format!("seely/clique-inv={a},{b}"), cfg, &si, &right, n, opts.card_bound);
        }
    }
    let bang_top = Formula::of_course(Formula::Top);
    let to_one = Morph::from_pairs("t", bang_top.clone(), Formula::One, &[(Point::empty_bag(), Point::Star)]);
    let from_one = Morph::from_pairs("t⁻¹", Formula::One, bang_top.clone(), &[(Point::Star, Point::empty_bag())]);
    let top_web = web(&bang_top, n);
    rep.equation("seely/top-iso-left".into(), &to_one.then(&from_one, w), &Morph::id(&bang_top), &top_web, n);
    rep.equation("seely/top-iso-right".into(), &from_one.then(&to_one, w), &Morph::id(&Formula::One), &[Point::Star], n);
    for cfg in &opts.semantics {
        rep.clique("seely/top-clique".into(), cfg, &to_one, &top_web, n, opts.card_bound);
        rep.clique("seely/top-clique-inv".into(), cfg, &from_one, &[Point::Star], n, opts.card_bound);
    }
}

/// Bags of `n` bags, each of cardinality at most `c`, over `pts`.
fn bags_of_bags(pts: &[Point], n: usize, c: usize) -> Vec<Bag<Bag<Point>>> {
    let comps: Vec<Bag<Point>> = (0..=c).flat_map(|k| bags_of_size(pts, k)).collect();
    bags_of_size(&comps, n)
}

/// Coherence in the indexed exponential implies coherence in the co-free
/// one, and likewise for strict coherence.
fn indexed_implies_cofree(rep: &mut LawsReport) {
    let k23 = KSet::finite([2, 3]).expect("valid");
    let cases: Vec<(String, Space, KSet, Vec<Point>)> = vec![
        ("bool".into(), Space::from(Formula::bool()), KSet::PairOnly, vec![Point::v(), Point::f()]),
        ("bool".into(), Space::from(Formula::bool()), k23.clone(), vec![Point::v(), Point::f()]),
        ("G".into(), Space::atom(Arc::new(TableSpace::g(KSet::PairOnly, 2))), KSet::PairOnly, labels()),
        ("G".into(), Space::atom(Arc::new(TableSpace::g(k23.clone(), 3))), k23, labels()),
    ];
    for (name, body, k, pts) in cases {
        let idx = SemanticsConfig::multiset(k.clone(), ExpFlavor::Indexed).expect("valid");
        let cof = SemanticsConfig::multiset(k.clone(), ExpFlavor::CoFree).expect("valid");
        let bang = Space::of_course(body);
        let mut witness = None;
        let mut checked = 0usize;
        'outer: for n in k.members_up_to(3) {
            for mu in bags_of_bags(&pts, n, 2) {
                let m: Bag<Point> = mu.map(|b| Point::Bag(b.clone()));
                let (vi, vc) = match (verdict_unchecked(&idx, &bang, &m), verdict_unchecked(&cof, &bang, &m)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        witness = Some(format!("{}: {e}", Point::Bag(m).pretty()));
                        break 'outer;
                    }
                };
                checked += 1;
                let coherent_ok = !vi.is_coherent() || vc.is_coherent();
                let strict_ok = vi != Verdict::StrictCoherent || vc == Verdict::StrictCoherent;
                if !coherent_ok || !strict_ok {
                    witness = Some(format!("{}: indexed {}, co-free {}", Point::Bag(m).pretty(), vi.word(), vc.word()));
                    break 'outer;
                }
            }
        }
        let status = if witness.is_some() || checked == 0 { Status::Fail } else { Status::Pass };
        rep.push(format!("indexed-cofree/{name}"), &format!("K={k}"), status, witness);
    }
}

fn labels() -> Vec<Point> {
    ["a", "b", "c"].iter().map(|l| Point::label(l)).collect()
}

fn comonoid_checks(rep: &mut LawsReport, c: &Comonoid, opts: &LawsOptions) {
    let n = opts.bound + 2;
    let w = 3 * n;
    let m = &c.carrier;
    let src = web(m, n);
    let id = Morph::id(m);
    let lunit = Morph::new("λ", Formula::tensor(Formula::One, m.clone()), m.clone(), |p, n| match p.as_pair() {
        Some((Point::Star, b)) => singleton_if(b.clone(), n),
        _ => BTreeSet::new(),
    });
    let runit = Morph::new("ρ", Formula::tensor(m.clone(), Formula::One), m.clone(), |p, n| match p.as_pair() {
        Some((a, Point::Star)) => singleton_if(a.clone(), n),
        _ => BTreeSet::new(),
    });
    let mm = Formula::tensor(m.clone(), m.clone());
    let swap = Morph::new("σ", mm.clone(), mm.clone(), |p, n| match p.as_pair() {
        Some((a, b)) => singleton_if(Point::pair(b.clone(), a.clone()), n),
        None => BTreeSet::new(),
    });
    let assoc = Morph::new(
        "α",
        Formula::tensor(mm.clone(), m.clone()),
        Formula::tensor(m.clone(), mm.clone()),
        |p, n| match p.as_pair().and_then(|(ab, c)| ab.as_pair().map(|(a, b)| (a, b, c))) {
            Some((a, b, c)) => singleton_if(Point::pair(a.clone(), Point::pair(b.clone(), c.clone())), n),
            None => BTreeSet::new(),
        },
    );
    let name = &c.name;
    rep.equation(
        format!("comonoid/counit-left={name}"),
        &c.comult.then(&c.counit.tensor(&id), w).then(&lunit, w),
        &id,
        &src,
        n,
    );
    rep.equation(
        format!("comonoid/counit-right={name}"),
        &c.comult.then(&id.tensor(&c.counit), w).then(&runit, w),
        &id,
        &src,
        n,
    );
    rep.equation(
        format!("comonoid/coassoc={name}"),
        &c.comult.then(&c.comult.tensor(&id), w).then(&assoc, w),
        &c.comult.then(&id.tensor(&c.comult), w),
        &src,
        n,
    );
    rep.equation(format!("comonoid/commute={name}"), &c.comult.then(&swap, w), &c.comult, &src, n);

    let lift = c.lift();
    rep.equation(format!("free-lift/counit={name}"), &lift.then(&weak(m), w), &c.counit, &src, n);
    rep.equation(
        format!("free-lift/comult={name}"),
        &lift.then(&cont(m), w),
        &c.comult.then(&lift.tensor(&lift), w),
        &src,
        n,
    );
    let mut factors = vec![Morph::id(m)];
    if *m == Formula::bool() {
        factors.extend(sample_morphisms().into_iter().filter(|g| g.src == Formula::bool()));
    }
    for f in factors {
        let star = lift.then(&f.bang(), w);
        rep.equation(format!("free-lift/factor={name},{}", f.name), &star.then(&der(&f.tgt), w), &f, &src, n);
    }
    for cfg in &opts.semantics {
        rep.clique(format!("free-lift/clique={name}"), cfg, &lift, &src, n, opts.card_bound);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_two() {
        let mu: Bag<Point> = [Point::v(), Point::f()].into_iter().collect();
        let ps = bag_partitions(&mu, 7);
        let nonempty: BTreeSet<_> = ps.iter().filter(|b| !b.contains(&Bag::new())).collect();
        assert_eq!(nonempty.len(), 2);
        assert!(ps.iter().all(|b| bag_sum_of(b) == mu));
    }

    fn bag_sum_of(b: &Bag<Bag<Point>>) -> Bag<Point> {
        crate::multiset::bag_sum(b.iter())
    }

    #[test]
    fn der_of_bool_is_a_clique_everywhere() {
        let opts = LawsOptions { bound: 4, ..LawsOptions::default() };
        let mut rep = LawsReport::default();
        let src = web(&Formula::of_course(Formula::bool()), 4);
        for cfg in &opts.semantics {
            rep.clique("der".into(), cfg, &der(&Formula::bool()), &src, 4, 3);
        }
        assert!(rep.failures().is_empty(), "{:?}", rep.failures());
    }

    #[test]
    fn unit_comonoid_lift() {
        let lift = Comonoid::unit().lift();
        let img = lift.image(&Point::Star, 5);
        let expected: BTreeSet<Point> = (0..5).map(|k| Point::Bag(Bag::repeat(Point::Star, k))).collect();
        assert_eq!(img, expected);
    }
}
