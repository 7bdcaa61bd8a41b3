use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use llsem::relsem::{interpret, parse_interp, ExpPolicy};
use llsem::space::{parse_table_space, ExpFlavor, KSet, SemanticsConfig, TableSpace};
use llsem::syntax::{check_proof, parse_point, parse_proof, render_sequent, Point, Proof};
use llsem::verify::{interact, Outcome};

fn corpus(dir: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(dir)
}

fn load(path: PathBuf) -> Proof {
    parse_proof(&fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn proof(name: &str) -> Proof {
    load(corpus("proofs").join(format!("{name}.llp")))
}

#[test]
fn proof_conclusions() {
    let expected = [
        ("ax_bool", "⊢ 1⊕1, ⊥&⊥"),
        ("ax_ofc_bool", "⊢ !(1⊕1), ?(⊥&⊥)"),
        ("cont_bool", "⊢ ?(1⊕1)"),
        ("der_bool", "⊢ ?(⊥&⊥), 1⊕1"),
        ("der_one", "⊢ ⊥, ?1"),
        ("der_plus", "⊢ ?(1⊕1)"),
        ("der_prom_one", "⊢ ?!1"),
        ("der_tensor", "⊢ ?(1⊗1)"),
        ("der_unit", "⊢ ?1"),
        ("dig_bool", "⊢ ?(⊥&⊥), !!(1⊕1)"),
        ("why_with", "⊢ ?(⊥&⊥), 1⊕1"),
        ("prom_pair", "⊢ ?!1, ⊥⊗⊥"),
        ("not", "⊢ ⊥&⊥, 1⊕1"),
        ("par_units", "⊢ 1, ⊥⅋⊥"),
        ("prom_der_bool", "⊢ ?(⊥&⊥), !(1⊕1)"),
        ("prom_one", "⊢ !1"),
        ("weak_bool", "⊢ 1, ?(1⊕1)"),
        ("with_units", "⊢ 1&1"),
    ];
    let on_disk = fs::read_dir(corpus("proofs")).unwrap().count();
    assert_eq!(on_disk, expected.len());
    for (name, sequent) in expected {
        let d = check_proof(&proof(name)).unwrap();
        assert_eq!(render_sequent(&d.conclusion), sequent, "{name}");
    }
}

#[test]
fn corpus_is_cut_and_sum_free() {
    for entry in fs::read_dir(corpus("proofs")).unwrap() {
        let p = load(entry.unwrap().path());
        assert!(!p.uses_cut() && !p.uses_sum());
    }
}

#[test]
fn why_with_matches_stored_interpretation() {
    let i = interpret(&proof("why_with"), &ExpPolicy::NonUniform, 12).unwrap();
    let doc = fs::read_to_string(corpus("interps").join("why_with.llx")).unwrap();
    let stored = parse_interp(&doc).unwrap();
    assert_eq!(i.tuples, stored.tuples);
    assert_eq!(i.sequent, stored.sequent);
}

fn points(texts: &[&str]) -> BTreeSet<Point> {
    texts.iter().map(|t| parse_point(t).unwrap()).collect()
}

#[test]
fn interaction_outcomes() {
    let expected: [(&str, &[&str]); 12] = [
        ("01_unit", &["*"]),
        ("02_unit_diverge", &[]),
        ("03_true", &["(inl *)"]),
        ("04_false_miss", &[]),
        ("05_false", &["(inr *)"]),
        ("06_weak", &["(bag)"]),
        ("07_der", &["(bag *)"]),
        ("08_cont", &["(bag * *)"]),
        ("09_tensor", &["(pair * *)"]),
        ("10_top", &[]),
        ("11_with", &["(inl *)"]),
        ("12_bang_bool", &["(bag (inl *))"]),
    ];
    let cfg = SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::CoFree).unwrap();
    let dir = corpus("interact");
    for (stem, want) in expected {
        let a = load(dir.join(format!("{stem}_a.llp")));
        let b = load(dir.join(format!("{stem}_b.llp")));
        let r = interact(&a, &b, &cfg, 8).unwrap();
        let want = points(want);
        match &r.outcome {
            Outcome::GiveUp(got) => assert_eq!(got, &want, "{stem}"),
            Outcome::Divergence => assert!(want.is_empty(), "{stem} diverged"),
        }
        assert!(r.deterministic(), "{stem}");
    }
}

#[test]
fn g_table_file_matches_builtin() {
    let text = fs::read_to_string(corpus("spaces").join("g.tbs")).unwrap();
    let parsed = parse_table_space(&text).unwrap();
    let builtin = TableSpace::g(KSet::AllGe2, 6);
    let a: Vec<_> = parsed.entries().map(|(b, v)| (b.clone(), v)).collect();
    let b: Vec<_> = builtin.entries().map(|(b, v)| (b.clone(), v)).collect();
    assert_eq!(a, b);
    assert!(parsed.is_reflexive());
}
