use super::*;
use crate::automaton::lang_equal;
use crate::language::lift;

/// Generator over `alphabet` with every state marked, state 0 initial.
fn build(t: &EventTable, alphabet: &str, edges: &[(usize, &str, usize)]) -> Generator {
    let mut g = Generator::empty(t.parse_set(alphabet).unwrap());
    let n = edges.iter().map(|&(s, _, d)| s.max(d) + 1).max().unwrap_or(1);
    for _ in 0..n {
        g.add_state(true);
    }
    g.set_initial(0);
    for &(s, e, d) in edges {
        g.add_transition(s, t.lookup(e).unwrap(), d).unwrap();
    }
    g
}

fn closure(t: &EventTable, alphabet: &str, words: &[&str]) -> Generator {
    let words: Vec<Word> = words
        .iter()
        .map(|w| w.split_whitespace().map(|e| t.lookup(e).unwrap()).collect())
        .collect();
    Generator::from_words(t.parse_set(alphabet).unwrap(), &words)
        .unwrap()
        .prefix_closure()
}

fn same(a: &Generator, b: &Generator) -> bool {
    lang_equal(a, b, LangKind::Marked).unwrap()
}

fn example1() -> CoordinationProblem {
    let mut t = EventTable::new();
    for (name, c) in [
        ("a1", true),
        ("a2", true),
        ("c", true),
        ("u", false),
        ("u1", false),
        ("u2", false),
    ] {
        t.register(name, c, true).unwrap();
    }
    let g1 = build(&t, "a1,u1,c,u", &[(0, "a1", 1), (1, "u1", 2), (0, "c", 3), (3, "u", 2)]);
    let g2 = build(&t, "a2,u2,c,u", &[(0, "a2", 1), (1, "u2", 2), (0, "c", 3), (3, "u", 2)]);
    let k = build(
        &t,
        "a1,a2,c,u,u1,u2",
        &[
            (0, "a1", 1),
            (1, "a2", 2),
            (2, "u2", 3),
            (0, "a2", 4),
            (4, "a1", 5),
            (5, "u1", 6),
        ],
    );
    let sk = t.parse_set("a1,a2,c,u").unwrap();
    CoordinationProblem::new(t, g1, g2, sk, k, None).unwrap()
}

fn example2() -> CoordinationProblem {
    let mut t = EventTable::new();
    for (name, c) in [("a", true), ("c1", true), ("c2", true), ("b", false), ("u2", false)] {
        t.register(name, c, true).unwrap();
    }
    let g1 = build(&t, "c1,b,a", &[(0, "c1", 1), (1, "b", 2), (0, "a", 3), (3, "b", 2)]);
    let g2 = build(
        &t,
        "c2,b,u2,a",
        &[(0, "c2", 1), (1, "b", 2), (1, "u2", 2), (0, "a", 3), (3, "b", 2)],
    );
    let k = build(
        &t,
        "a,b,c1,c2,u2",
        &[
            (0, "c1", 1),
            (1, "c2", 2),
            (2, "b", 3),
            (0, "c2", 4),
            (4, "c1", 2),
            (0, "a", 3),
        ],
    );
    let sk = t.parse_set("a,b").unwrap();
    CoordinationProblem::new(t, g1, g2, sk, k, None).unwrap()
}

#[test]
fn coordinators_of_both_examples() {
    let p = example2();
    assert!(same(&p.gk().generated(), &closure(p.events(), "a,b", &["a b", "b"])));

    let p = example1();
    let t = p.events();
    let expected = sync_product(
        &closure(t, "a1,c,u", &["a1", "c u"]),
        &closure(t, "a2,c,u", &["a2", "c u"]),
    );
    assert!(same(p.gk(), &expected));
}

#[test]
fn coordinator_over_full_alphabet_is_the_product() {
    let p = example1();
    let g1 = p.g1().with_alphabet(p.alphabet().clone()).unwrap();
    let g2 = p.g2().with_alphabet(p.alphabet().clone()).unwrap();
    let gk = build_coordinator(&g1, &g2, p.alphabet()).unwrap();
    assert!(same(&gk, &sync_product(&g1, &g2)));
}

#[test]
fn example1_synthesis() {
    let p = example1();
    let t = p.events();
    let r = synth_supcc(&p).unwrap();
    assert!(same(&r.sup_k, &closure(t, "a1,a2,c,u", &["a1 a2", "a2 a1"])));
    assert!(same(&r.sup_1k, &closure(t, "a1,a2,c,u,u1", &["a2 a1 u1"])));
    assert!(same(&r.sup_2k, &closure(t, "a1,a2,c,u,u2", &["a1 a2 u2"])));
    assert!(!r.all_hold("strong_inclusion"));
    assert!(r.all_hold("intersection_controllable"));
    assert!(r.all_hold("projection_within_sup_k"));
    assert_eq!(
        r.intersection.enumerate_words(8),
        vec![Vec::<crate::events::EventId>::new()]
    );
    assert_eq!(r.route(), Some(Route::Intersection));
    let result = r.result().unwrap();
    assert_eq!(result.enumerate_words(8), vec![vec![]]);
    assert_eq!(r.result_kind(), "language");
}

#[test]
fn example2_synthesis_is_withheld() {
    let p = example2();
    let t = p.events();
    let r = synth_supcc(&p).unwrap();
    assert!(same(&r.sup_k, &closure(t, "a,b", &["b"])));
    assert!(same(&r.sup_1k, &closure(t, "a,b,c1", &["c1 b"])));
    assert!(same(&r.sup_2k, &Generator::epsilon(t.parse_set("a,b,c2,u2").unwrap())));
    let v = r.verdict("intersection_controllable", Some(Level::K)).unwrap();
    assert_eq!(
        v.witness,
        Some(Witness::Controllability(ControllabilityWitness {
            prefix: vec![],
            event: t.lookup("b").unwrap(),
        }))
    );
    assert!(!r.verdict("observer", Some(Level::OneK)).unwrap().holds());
    assert_eq!(r.route(), None);
    assert_eq!(r.result_kind(), "withheld");
}

#[test]
fn full_observation_supccn_matches_supcc() {
    for p in [example1(), example2()] {
        let cc = synth_supcc(&p).unwrap();
        let cn = synth_supccn(&p, p.alphabet()).unwrap();
        for (a, b) in [
            (&cc.sup_k, &cn.sup_k),
            (&cc.sup_1k, &cn.sup_1k),
            (&cc.sup_2k, &cn.sup_2k),
        ] {
            assert!(same(a, b));
        }
        assert_eq!(cc.route(), cn.route());
        assert!(cn.all_hold("intersection_normal"));
    }
}

#[test]
fn example1_spec_fails_at_level_1k() {
    let p = example1();
    let t = p.events();
    let v = is_cond_controllable(&p, p.spec()).unwrap();
    let Verdict::Fails(LevelWitness {
        level,
        witness: Witness::Controllability(w),
    }) = v
    else {
        panic!("expected a controllability failure, got {v:?}");
    };
    assert_eq!(level, Level::OneK);
    assert_eq!(w.event, t.lookup("u1").unwrap());
    assert_eq!(t.format_word(&w.prefix), "a1");
}

#[test]
fn synthesized_result_is_conditionally_controllable() {
    let p = example1();
    let r = synth_supcc(&p).unwrap();
    let result = r.result().unwrap();
    assert!(is_cond_controllable(&p, result).unwrap().holds());
    assert!(is_cond_closed(&p, result).unwrap().holds());
    assert!(is_cond_normal(&p, result, p.alphabet()).unwrap().holds());
}

#[test]
fn everything_controllable_returns_the_spec() {
    let base = example1();
    let mut t = EventTable::new();
    for (id, info) in base.events().iter() {
        assert_eq!(t.register(&info.name, true, true).unwrap(), id);
    }
    let p = CoordinationProblem::new(
        t,
        base.g1().clone(),
        base.g2().clone(),
        base.sigma_k().clone(),
        base.spec().clone(),
        None,
    )
    .unwrap();
    assert!(is_cond_controllable(&p, p.spec()).unwrap().holds());
    let r = synth_supcc(&p).unwrap();
    assert_eq!(r.route(), Some(Route::StrongInclusion));
    assert!(same(r.result().unwrap(), p.spec()));
}

#[test]
fn prefix_closed_spec_is_conditionally_closed() {
    let p = example1();
    assert!(p.spec().is_prefix_closed());
    assert!(is_cond_closed(&p, p.spec()).unwrap().holds());
}

#[test]
fn conditional_normality_reports_the_failing_level() {
    let p = example1();
    let t = p.events();
    // With a2 hidden, a1u1 looks like a2a1u1 at level 1+k.
    let observable = t.parse_set("a1,c,u,u1,u2").unwrap();
    let v = is_cond_normal(&p, p.spec(), &observable).unwrap();
    let Verdict::Fails(LevelWitness {
        level,
        witness: Witness::Word(w),
    }) = v
    else {
        panic!("expected a normality failure, got {v:?}");
    };
    assert_eq!((level, t.format_word(&w).as_str()), (Level::OneK, "a1 u1"));
}

#[test]
fn example1_closed_loop() {
    let p = example1();
    let r = synth_supcc(&p).unwrap();
    let target = r.result().unwrap().clone();
    let report = verify_closed_loop(&p, &r.sup_1k, &r.sup_2k, &r.sup_k, &target).unwrap();
    assert!(report.holds(), "{:?}", report.checks);
    assert_eq!(report.closed_loop.enumerate_words(5), vec![vec![]]);
}

#[test]
fn plants_as_supervisors_miss_the_spec() {
    let p = example1();
    let s1 = lift(p.g1(), &p.level_alphabet(Level::OneK)).unwrap();
    let s2 = lift(p.g2(), &p.level_alphabet(Level::TwoK)).unwrap();
    let report = verify_closed_loop(&p, &s1, &s2, p.gk(), p.spec()).unwrap();
    assert!(!report.holds());
    let eq = report.checks.iter().find(|c| c.name == "equals_target").unwrap();
    assert!(!eq.holds());
}

#[test]
fn invalid_problems_are_rejected() {
    let p = example1();
    let t = p.events().clone();
    // Σk missing the shared event c.
    let sk = t.parse_set("a1,a2,u").unwrap();
    assert!(CoordinationProblem::new(t.clone(), p.g1().clone(), p.g2().clone(), sk, p.spec().clone(), None).is_err());
    // Specification word outside the plant.
    let bad = closure(&t, "a1,a2,c,u,u1,u2", &["u1"]);
    let err = CoordinationProblem::new(t, p.g1().clone(), p.g2().clone(), p.sigma_k().clone(), bad, None);
    assert!(matches!(err, Err(Error::InvalidProblem(_))));
}
