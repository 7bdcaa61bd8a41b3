//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use llsem::multiset::{bags_of_size, Bag};
use llsem::neutral::neutral_member;
use llsem::relsem::{interpret, ExpPolicy};
use llsem::space::{verdict, ExpFlavor, KSet, SemanticsConfig, Space, TableSpace, Verdict};
use llsem::syntax::{parse_proof, Formula, Point, Proof};
use llsem::verify::{
    bipartite_remark, determinism_violations, interact, is_clique, laws_suite, logicality_check, logicality_configs,
    random_weakly_reflexive_table, CliqueStatus, LawsOptions, Status,
};

const FIG_BOUND: usize = 12;
const CARD_BOUND: usize = 6;
const RANDOM_TABLES: usize = 120;
const MAX_WEB: usize = 4;
const MAX_BAG: usize = 4;
const SEED: u64 = 0x5eed_2024;
const INTERACT_BOUND: usize = 8;
const LOGICALITY_BOUND: usize = 8;

fn corpus(dir: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(dir)
}

fn read_proof(path: &PathBuf) -> Proof {
    let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_proof(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn corpus_proofs() -> Vec<(String, Proof)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus("proofs")).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), read_proof(p)))
        .collect()
}

fn bag(items: &[Point]) -> Point {
    Point::bag(items.iter().cloned())
}

fn strings(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn listed(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(": {}", items.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let p = read_proof(&corpus("proofs").join("why_with.llp"));
    let rel: BTreeSet<String> = interpret(&p, &ExpPolicy::NonUniform, FIG_BOUND).unwrap().pretty_tuples().into_iter().collect();
    let expected_rel = strings(&["([v,f],v)", "([v,f],f)", "([v,v],v)", "([f,f],f)"]);
    let expected_uniform = strings(&["([v,v],v)", "([f,f],f)"]);
    let mut bad = Vec::new();
    if rel != expected_rel {
        bad.push(format!("relational {rel:?}"));
    }
    let configs = [
        SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::UniformMultiset).unwrap(),
        SemanticsConfig::hyper(ExpFlavor::UniformMultiset).unwrap(),
        SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::UniformMultiset).unwrap(),
    ];
    for cfg in &configs {
        let got: BTreeSet<String> =
            interpret(&p, &ExpPolicy::for_config(cfg), FIG_BOUND).unwrap().pretty_tuples().into_iter().collect();
        if got != expected_uniform {
            bad.push(format!("{cfg} {got:?}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "4 relational tuples, 2 uniform tuples in 3 semantics".into() } else { bad.join("; ") })
}

fn criterion_2() -> Outcome {
    let p = read_proof(&corpus("proofs").join("prom_pair.llp"));
    let rel = interpret(&p, &ExpPolicy::NonUniform, FIG_BOUND).unwrap();
    let cfg = SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::UniformMultiset).unwrap();
    let coh = interpret(&p, &ExpPolicy::for_config(&cfg), FIG_BOUND).unwrap();
    let s = Point::Star;
    let two = bag(&[s.clone(), s.clone()]);
    let pair = Point::pair(s.clone(), s.clone());
    let first = vec![bag(&[two.clone(), two.clone()]), pair.clone()];
    let second = vec![bag(&[bag(std::slice::from_ref(&s)), two.clone()]), pair];
    let ok = rel.contains(&first) && rel.contains(&second) && coh.contains(&first) && !coh.contains(&second);
    outcome(
        ok,
        format!(
            "relational has first={} second={}; coherence has first={} second={}",
            rel.contains(&first),
            rel.contains(&second),
            coh.contains(&first),
            coh.contains(&second)
        ),
    )
}

fn criterion_3() -> Outcome {
    let b = Space::from(Formula::bool());
    let bb = Space::of_course(b.clone());
    let space = Space::lolli(Space::tensor(Space::tensor(bb.clone(), bb.clone()), bb), b);
    let vv = bag(&[Point::v(), Point::v()]);
    let ff = bag(&[Point::f(), Point::f()]);
    let e = Point::empty_bag();
    let point = |x: &Point, y: &Point, z: &Point| {
        Point::pair(Point::pair(Point::pair(x.clone(), y.clone()), z.clone()), Point::v())
    };
    let f: BTreeSet<Point> = [point(&e, &vv, &ff), point(&ff, &e, &vv), point(&vv, &ff, &e)].into_iter().collect();
    let k = KSet::finite([2, 3]).unwrap();
    let indexed = SemanticsConfig::multiset(k.clone(), ExpFlavor::Indexed).unwrap();
    let cofree = SemanticsConfig::multiset(k, ExpFlavor::CoFree).unwrap();
    let ri = is_clique(&indexed, &space, &f, CARD_BOUND).unwrap();
    let rc = is_clique(&cofree, &space, &f, CARD_BOUND).unwrap();
    let all_three: Bag<Point> = f.iter().cloned().collect();
    let ok = ri.status == CliqueStatus::Clique && ri.checked == vec![2, 3] && rc.witness() == Some(&all_three);
    outcome(ok, format!("indexed: {}; co-free: {}", ri.word(), rc.word()))
}

fn criterion_4() -> Outcome {
    let b = Space::from(Formula::bool());
    let space = Space::lolli(Space::of_course(b.clone()), b);
    let x: BTreeSet<Point> = [
        Point::pair(bag(&[Point::v()]), Point::v()),
        Point::pair(bag(&[Point::f()]), Point::v()),
        Point::pair(bag(&[Point::v(), Point::f()]), Point::v()),
    ]
    .into_iter()
    .collect();
    let cfg = SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::CoFree).unwrap();
    let r = is_clique(&cfg, &space, &x, CARD_BOUND).unwrap();
    let ok = r.status == CliqueStatus::CliqueUpToBound(CARD_BOUND) && r.checked == vec![2, 3, 4, 5, 6];
    outcome(ok, format!("{r}, cardinalities {:?}", r.checked))
}

fn criterion_5() -> Outcome {
    let g = Arc::new(TableSpace::g(KSet::AllGe2, CARD_BOUND));
    let bang = Space::of_course(Space::atom(g));
    let cfg = SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::CoFree).unwrap();
    let l = Point::label;
    let a = bag(&[l("a")]);
    let bc = bag(&[l("b"), l("c")]);
    let ab = bag(&[l("a"), l("b")]);
    let ac = bag(&[l("a"), l("c")]);
    let abc = bag(&[l("a"), l("b"), l("c")]);
    let of = |items: Vec<Point>| -> Bag<Point> { items.into_iter().collect() };
    let mut cases = vec![
        (of(vec![a.clone(), bc.clone()]), Verdict::StrictCoherent),
        (of(vec![a.clone(), bc.clone(), bc.clone()]), Verdict::StrictIncoherent),
        (of(vec![a.clone(), a.clone(), bc.clone()]), Verdict::StrictCoherent),
        (Bag::repeat(abc, 3), Verdict::StrictIncoherent),
    ];
    for k in 3..=CARD_BOUND {
        for i in 1..k {
            let mut m = Bag::repeat(ab.clone(), i);
            m.insert_many(ac.clone(), k - i);
            cases.push((m, Verdict::StrictIncoherent));
        }
    }
    let bad: Vec<String> = cases
        .iter()
        .filter_map(|(m, want)| {
            let got = verdict(&cfg, &bang, m).unwrap();
            (got != *want).then(|| format!("{} is {}", Point::Bag(m.clone()).pretty(), got.word()))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} verdicts over !G", cases.len()) } else { bad.join("; ") })
}

fn criterion_6() -> Outcome {
    let g = Arc::new(TableSpace::g(KSet::AllGe2, CARD_BOUND));
    let arrow = Space::lolli(Space::of_course(Space::atom(g)), Space::from(Formula::bool()));
    let l = Point::label;
    let f: BTreeSet<Point> =
        [Point::pair(bag(&[l("a"), l("b")]), Point::v()), Point::pair(bag(&[l("c")]), Point::f())].into_iter().collect();
    let hyper = SemanticsConfig::hyper(ExpFlavor::UniformSet).unwrap();
    let multi = SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::UniformMultiset).unwrap();
    let rh = is_clique(&hyper, &arrow, &f, CARD_BOUND).unwrap();
    let rm = is_clique(&multi, &arrow, &f, CARD_BOUND).unwrap();
    let pair: Bag<Point> = f.iter().cloned().collect();
    let ok = rh.status == CliqueStatus::Clique && rm.witness() == Some(&pair);
    outcome(ok, format!("hypercoherence: {}; multicoherence: {}", rh.word(), rm.word()))
}

fn random_tables() -> Vec<TableSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_TABLES)
        .map(|i| {
            let k = if i % 2 == 0 { KSet::PairOnly } else { KSet::finite([2, 3]).unwrap() };
            let cap = k.max().unwrap();
            let web = rng.gen_range(1..=MAX_WEB);
            random_weakly_reflexive_table(&mut rng, web, k, cap)
        })
        .collect()
}

fn weakly_reflexive(t: &TableSpace) -> bool {
    t.entries().all(|(b, v)| v != Verdict::Neutral || b.distinct_len() == 1)
}

/// Every arrangement of the elements of `b`, duplicates removed.
fn arrangements(b: &Bag<Point>) -> Vec<Vec<Point>> {
    fn go(rest: &mut Vec<Point>, acc: &mut Vec<Point>, out: &mut BTreeSet<Vec<Point>>) {
        if rest.is_empty() {
            out.insert(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let p = rest.remove(i);
            acc.push(p.clone());
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, p);
        }
    }
    let mut out = BTreeSet::new();
    go(&mut b.to_vec(), &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// Co-free verdict of `n[b]` in `!T` computed from the definition: strictly
/// incoherent when some section is, neutral when the `n` copies can be laid out
/// as rows whose columns are all neutral.
fn brute_constant_verdict(t: &TableSpace, b: &Bag<Point>, n: usize) -> Verdict {
    let support: Vec<Point> = b.support().into_iter().collect();
    for s in bags_of_size(&support, n) {
        if t.lookup(&s).unwrap() == Verdict::StrictIncoherent {
            return Verdict::StrictIncoherent;
        }
    }
    let first = b.to_vec();
    let perms = arrangements(b);
    let mut rows = vec![0usize; n - 1];
    loop {
        let columns_neutral = (0..first.len()).all(|j| {
            let mut col = Bag::singleton(first[j].clone());
            for r in &rows {
                col.insert(perms[*r][j].clone());
            }
            t.lookup(&col).unwrap() == Verdict::Neutral
        });
        if columns_neutral {
            return Verdict::Neutral;
        }
        let mut i = 0;
        loop {
            if i == rows.len() {
                return Verdict::StrictCoherent;
            }
            rows[i] += 1;
            if rows[i] < perms.len() {
                break;
            }
            rows[i] = 0;
            i += 1;
        }
    }
}

fn criterion_7(tables: &[TableSpace]) -> Outcome {
    let mut discrepancies = Vec::new();
    let mut checked = 0usize;
    for (i, t) in tables.iter().enumerate() {
        if !weakly_reflexive(t) {
            discrepancies.push(format!("table {i} is not weakly reflexive"));
            continue;
        }
        let cfg = SemanticsConfig::multiset(t.k.clone(), ExpFlavor::CoFree).unwrap();
        let bang = Space::of_course(Space::atom(Arc::new(t.clone())));
        let pts = t.points();
        for size in 0..=MAX_BAG {
            for b in bags_of_size(&pts, size) {
                checked += 1;
                let brute = t.k.members_up_to(t.cap).into_iter().all(|n| brute_constant_verdict(t, &b, n) == Verdict::Neutral);
                let lemma = neutral_member(&cfg, &bang, &Point::Bag(b.clone())).unwrap().holds();
                if brute != lemma {
                    discrepancies.push(format!("table {i} bag {}: brute {brute}, lemma {lemma}", Point::Bag(b).pretty()));
                }
            }
        }
    }
    outcome(
        discrepancies.is_empty(),
        format!("{} tables, {checked} bags, {} discrepancies{}", tables.len(), discrepancies.len(), listed(&discrepancies)),
    )
}

fn table_clique(t: &TableSpace, x: &[Point], forbidden: Verdict) -> bool {
    t.k.members_up_to(t.cap).into_iter().all(|n| bags_of_size(x, n).iter().all(|b| t.lookup(b).unwrap() != forbidden))
}

fn interact_pairs() -> Vec<(String, Proof, Proof)> {
    let dir = corpus("interact");
    let mut stems: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.unwrap().file_name().to_string_lossy().strip_suffix("_a.llp").map(str::to_string))
        .collect();
    stems.sort();
    stems
        .into_iter()
        .map(|s| {
            let a = read_proof(&dir.join(format!("{s}_a.llp")));
            let b = read_proof(&dir.join(format!("{s}_b.llp")));
            (s, a, b)
        })
        .collect()
}

fn criterion_8(tables: &[TableSpace]) -> Outcome {
    let mut violations = Vec::new();
    let mut pairs = 0usize;
    for (i, t) in tables.iter().enumerate() {
        let pts = t.points();
        let subsets: Vec<Vec<Point>> = (0u32..1 << pts.len())
            .map(|m| (0..pts.len()).filter(|j| m >> j & 1 == 1).map(|j| pts[j].clone()).collect())
            .collect();
        let cliques: Vec<&Vec<Point>> = subsets.iter().filter(|x| table_clique(t, x, Verdict::StrictIncoherent)).collect();
        let anti: Vec<&Vec<Point>> = subsets.iter().filter(|y| table_clique(t, y, Verdict::StrictCoherent)).collect();
        for x in &cliques {
            for y in &anti {
                pairs += 1;
                if x.iter().filter(|p| y.contains(p)).count() > 1 {
                    violations.push(format!("table {i}: {x:?} / {y:?}"));
                }
            }
        }
        let lib = determinism_violations(t).unwrap();
        if !lib.is_empty() {
            violations.push(format!("table {i}: library reports {} pairs", lib.len()));
        }
    }
    let configs = [
        SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::CoFree).unwrap(),
        SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::CoFree).unwrap(),
        SemanticsConfig::hyper(ExpFlavor::NonUniformHyper).unwrap(),
    ];
    let corpus = interact_pairs();
    let mut runs = 0usize;
    for (name, a, b) in &corpus {
        if a.uses_sum() || b.uses_sum() {
            violations.push(format!("{name} uses sum"));
        }
        for cfg in &configs {
            runs += 1;
            let r = interact(a, b, cfg, INTERACT_BOUND).unwrap();
            if r.points() > 1 || !r.neutral.iter().all(|(_, j)| j.holds()) {
                violations.push(format!("{name} under {cfg}: {r}"));
            }
        }
    }
    let ok = violations.is_empty() && corpus.len() >= 10;
    outcome(
        ok,
        format!(
            "{pairs} clique/anti-clique pairs, {} interaction pairs x {} semantics ({runs} runs), {} violations{}",
            corpus.len(),
            configs.len(),
            violations.len(),
            listed(&violations)
        ),
    )
}

fn criterion_9() -> Outcome {
    let report = laws_suite(&LawsOptions::default());
    let fails: Vec<String> = report
        .failures()
        .iter()
        .map(|r| format!("{} [{}] {}", r.id, r.semantics, r.witness.clone().unwrap_or_default()))
        .collect();
    let bounded = report.records.iter().filter(|r| r.status == Status::Bounded).count();
    let ok = fails.is_empty() && !report.records.is_empty();
    outcome(ok, format!("{} checks, {bounded} bounded, {} failures{}", report.records.len(), fails.len(), listed(&fails)))
}

fn criterion_10() -> Outcome {
    let proofs = corpus_proofs();
    let records = logicality_check(&proofs, &logicality_configs(), LOGICALITY_BOUND).unwrap();
    let fails: Vec<String> = records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{} [{}] -{:?} +{:?}", r.proof, r.semantics, r.only_restricted, r.only_uniform))
        .collect();
    let bip = bipartite_remark(&proofs, LOGICALITY_BOUND).unwrap();
    let bip_fails: Vec<String> = bip.iter().filter(|r| !r.passes()).map(|r| r.proof.clone()).collect();
    let has_samples = proofs.iter().any(|(n, _)| n == "why_with") && proofs.iter().any(|(n, _)| n == "prom_pair");
    let ok = fails.is_empty() && bip_fails.is_empty() && !bip.is_empty() && proofs.len() >= 10 && has_samples;
    outcome(
        ok,
        format!(
            "{} proofs x {} semantics, {} failures{}; bipartite remark on {} proofs, {} failures{}",
            proofs.len(),
            logicality_configs().len(),
            fails.len(),
            listed(&fails),
            bip.len(),
            bip_fails.len(),
            listed(&bip_fails)
        ),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let tables = random_tables();
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("why-with interpretations", Box::new(criterion_1)),
        ("promotion memberships", Box::new(criterion_2)),
        ("Berry discrimination", Box::new(criterion_3)),
        ("uniform promotion clique", Box::new(criterion_4)),
        ("verdict table over G", Box::new(criterion_5)),
        ("hypercoherence vs multicoherence", Box::new(criterion_6)),
        ("neutrality oracle", Box::new(|| criterion_7(&tables))),
        ("determinism", Box::new(|| criterion_8(&tables))),
        ("law harness", Box::new(criterion_9)),
        ("logicality", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let word = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("{word} criterion {}: {name}: {} ({:.2?})", i + 1, o.detail, start.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
