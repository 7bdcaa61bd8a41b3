use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use llsem::multiset::{sections, Bag};
use llsem::relsem::{interpret, kleisli_apply, parse_interp, ExpPolicy};
use llsem::space::{verdict, ExpFlavor, KSet, SemanticsConfig, Space};
use llsem::space::parse_table_space;
use llsem::syntax::{check_proof, enum_web, parse_formula, parse_point, parse_points, parse_proof, render_formula, Formula, Point, Proof};
use llsem::verify::is_clique;

fn small_bag() -> impl Strategy<Value = Bag<u8>> {
    prop::collection::vec(0u8..4, 0..6).prop_map(|v| v.into_iter().collect())
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::One), Just(Formula::Bot), Just(Formula::Zero), Just(Formula::Top)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            inner.clone().prop_map(Formula::of_course),
            inner.prop_map(Formula::why_not),
        ]
    })
}

fn cofree(k: usize) -> SemanticsConfig {
    let k = if k == 0 { KSet::PairOnly } else { KSet::finite([2, 3]).unwrap() };
    SemanticsConfig::multiset(k, ExpFlavor::CoFree).unwrap()
}

fn corpus() -> Vec<(String, Proof)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join("proofs");
    let mut paths: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, llsem::syntax::parse_proof(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect()
}

proptest! {
    #[test]
    fn bag_sum_is_commutative_and_additive(a in small_bag(), b in small_bag()) {
        prop_assert_eq!(a.sum(&b), b.sum(&a));
        prop_assert_eq!(a.sum(&b).len(), a.len() + b.len());
        prop_assert_eq!(a.sum(&b).difference(&b), a.clone());
        prop_assert!(a.is_sub_bag(&a.sum(&b)));
    }

    #[test]
    fn sub_bags_are_counted_by_multiplicities(a in small_bag()) {
        let subs = a.sub_bags();
        let expected: usize = a.counts().map(|(_, c)| c + 1).product();
        prop_assert_eq!(subs.len(), expected);
        prop_assert!(subs.iter().all(|s| s.is_sub_bag(&a)));
        let distinct: BTreeSet<_> = subs.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), subs.len());
    }

    #[test]
    fn sections_pick_one_element_per_component(parts in prop::collection::vec(prop::collection::vec(0u8..3, 1..3), 1..4)) {
        let mu: Bag<Bag<u8>> = parts.iter().map(|p| p.iter().copied().collect()).collect();
        for s in sections(&mu) {
            prop_assert_eq!(s.len(), mu.len());
            prop_assert!(s.distinct().all(|x| mu.distinct().any(|c| c.contains(x))));
        }
    }

    #[test]
    fn dual_is_an_involution_preserving_the_web(f in formula()) {
        prop_assert_eq!(f.dual().dual(), f.clone());
        prop_assert_eq!(enum_web(&f, 4), enum_web(&f.dual(), 4));
    }

    #[test]
    fn formulas_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&render_formula(&f)).unwrap(), f);
    }

    #[test]
    fn points_round_trip(f in formula()) {
        for p in enum_web(&f, 3) {
            prop_assert_eq!(parse_point(&p.render()).unwrap(), p);
        }
    }

    #[test]
    fn web_enumeration_is_monotone(f in formula(), n in 1usize..4) {
        prop_assert!(enum_web(&f, n).is_subset(&enum_web(&f, n + 1)));
    }

    #[test]
    fn dual_verdicts_are_mirrored(f in formula(), k in 0usize..2, picks in prop::collection::vec(any::<prop::sample::Index>(), 2..4)) {
        let web: Vec<Point> = enum_web(&f, 3).into_iter().collect();
        prop_assume!(!web.is_empty());
        let cfg = cofree(k);
        prop_assume!(cfg.k().unwrap().contains(picks.len()));
        let m: Bag<Point> = picks.iter().map(|i| web[i.index(web.len())].clone()).collect();
        let s = Space::from(&f);
        match (verdict(&cfg, &s, &m), verdict(&cfg, &s.dual(), &m)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.mirror(), b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn kleisli_application_is_monotone(
        rel in prop::collection::btree_set((prop::collection::vec(0u8..3, 0..3), 0u8..3), 0..6),
        x in prop::collection::btree_set(0u8..3, 0..3),
        extra in 0u8..3,
    ) {
        let lab = |i: u8| Point::label(["a", "b", "c"][i as usize]);
        let f: BTreeSet<(Bag<Point>, Point)> = rel.iter().map(|(mu, b)| (mu.iter().map(|i| lab(*i)).collect(), lab(*b))).collect();
        let small: BTreeSet<Point> = x.iter().map(|i| lab(*i)).collect();
        let mut big = small.clone();
        big.insert(lab(extra));
        prop_assert!(kleisli_apply(&f, &small).is_subset(&kleisli_apply(&f, &big)));
    }
}

fn token_soup() -> impl Strategy<Value = String> {
    let token = prop_oneof![
        Just("(".to_string()),
        Just(")".to_string()),
        Just(" ".to_string()),
        Just("\n".to_string()),
        prop::sample::select(vec![
            "1", "bot", "0", "top", "bool", "nat", "tensor", "par", "with", "plus", "ofc", "why", "dual", "ax", "cut",
            "one", "prom", "cont", "weak", "der", "ex", "giveup", "diverge", "sum", "plus1", "plus2", "*", "inl",
            "inr", "pair", "bag", "a", "b", "3", "-1", "99999999999999999999", "sequent", "bound", "web:", "K:",
            "cap:", "support", "verdict", "neutral", "coherent", "#", ";", "é",
        ])
        .prop_map(str::to_string),
    ];
    prop::collection::vec(token, 0..40).prop_map(|v| v.concat())
}

proptest! {
    #[test]
    fn parsers_never_panic(text in token_soup()) {
        if let Ok(p) = parse_proof(&text) {
            let _ = check_proof(&p);
        }
        let _ = parse_formula(&text);
        let _ = parse_point(&text);
        let _ = parse_points(&text);
        let _ = parse_table_space(&text);
        let _ = parse_interp(&text);
        let _ = text.parse::<KSet>();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uniform_interpretations_are_included(idx in any::<prop::sample::Index>(), which in 0usize..3, bound in 2usize..6) {
        let proofs = corpus();
        let (name, p) = &proofs[idx.index(proofs.len())];
        let cfg = match which {
            0 => SemanticsConfig::multiset(KSet::PairOnly, ExpFlavor::UniformMultiset).unwrap(),
            1 => SemanticsConfig::multiset(KSet::AllGe2, ExpFlavor::UniformMultiset).unwrap(),
            _ => SemanticsConfig::hyper(ExpFlavor::UniformMultiset).unwrap(),
        };
        let rel = interpret(p, &ExpPolicy::NonUniform, bound).unwrap();
        let uni = interpret(p, &ExpPolicy::for_config(&cfg), bound).unwrap();
        prop_assert!(uni.tuples.is_subset(&rel.tuples), "{}", name);
    }

    #[test]
    fn interpretations_grow_with_the_bound(idx in any::<prop::sample::Index>(), bound in 1usize..6) {
        let proofs = corpus();
        let (name, p) = &proofs[idx.index(proofs.len())];
        let a = interpret(p, &ExpPolicy::NonUniform, bound).unwrap();
        let b = interpret(p, &ExpPolicy::NonUniform, bound + 1).unwrap();
        prop_assert!(a.tuples.is_subset(&b.tuples), "{}", name);
    }

    #[test]
    fn interpretations_are_cliques(idx in any::<prop::sample::Index>(), k in 0usize..2) {
        let proofs = corpus();
        let (name, p) = &proofs[idx.index(proofs.len())];
        let cfg = cofree(k);
        let i = interpret(p, &ExpPolicy::NonUniform, 4).unwrap();
        let (space, points): (Space, BTreeSet<Point>) = match i.sequent.as_slice() {
            [a] => (Space::from(a), i.tuples.iter().map(|t| t[0].clone()).collect()),
            [a, b] => (
                Space::par(Space::from(a), Space::from(b)),
                i.tuples.iter().map(|t| Point::pair(t[0].clone(), t[1].clone())).collect(),
            ),
            _ => return Ok(()),
        };
        let r = is_clique(&cfg, &space, &points, 3).unwrap();
        prop_assert!(r.is_clique(), "{} under {}: {}", name, cfg, r);
    }
}
