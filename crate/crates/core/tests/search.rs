use abelsq::counting::Mode;
use abelsq::search::{
    longest_avoiding, solve, solve_blind, AvoidanceSpec, Objective, ProblemSpec, SearchError, SearchOptions, SquareKind,
};
use abelsq::symmetry::{canonical_representative, Symmetry};
use abelsq::{census, Topology, Word};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

#[test]
fn solver_matches_blind_enumeration_on_the_grid() {
    for (t, n_max) in [(2, 12), (3, 8)] {
        for n in 1..=n_max {
            for spec in ProblemSpec::grid(n, t) {
                let fast = solve(spec, &opts()).unwrap();
                let blind = solve_blind(spec, 1 << 20).unwrap();
                assert_eq!(fast.value, blind.value, "{spec}");
                assert_eq!(fast.witness_count, blind.witness_count, "{spec}");
                assert_eq!(fast.witnesses, blind.witnesses, "{spec}");
            }
        }
    }
}

#[test]
fn closed_forms_for_max_total() {
    for n in 1..=14usize {
        let lin = solve(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, n, 2), &opts()).unwrap();
        assert_eq!(lin.value, ((n / 2) * n.div_ceil(2)) as u64);
        assert_eq!(lin.witnesses[0].to_string(), "a".repeat(n));
        let circ = solve(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Circular, n, 2), &opts()).unwrap();
        assert_eq!(circ.value, (n * (n / 2)) as u64);
        assert_eq!(circ.witnesses[0].to_string(), "a".repeat(n));
    }
}

#[test]
fn witnesses_attain_and_are_canonical() {
    for spec in ProblemSpec::grid(9, 2) {
        let r = solve(spec, &opts()).unwrap();
        assert!(r.witness_count >= 1);
        for w in &r.witnesses {
            assert_eq!(census(w).value(spec.mode), r.value, "{spec} {w}");
            assert_eq!(&canonical_representative(w, Symmetry::full_for(w)), w, "{spec}");
        }
    }
}

#[test]
fn results_do_not_depend_on_threads_or_prefix_depth() {
    let spec = ProblemSpec::new(Objective::Min, Mode::Total, Topology::Linear, 18, 2);
    let base = solve(spec, &SearchOptions { threads: Some(1), ..opts() }).unwrap();
    for (threads, depth) in [(Some(4), 8), (Some(3), 3), (Some(2), 12)] {
        let other = solve(spec, &SearchOptions { threads, prefix_depth: depth, ..opts() }).unwrap();
        assert_eq!(other.value, base.value);
        assert_eq!(other.witness_count, base.witness_count);
        assert_eq!(other.witnesses, base.witnesses);
    }
    assert_eq!((base.value, base.witness_count), (17, 68));
    let same_depth = solve(spec, &SearchOptions { threads: Some(4), ..opts() }).unwrap();
    assert_eq!(same_depth.nodes, base.nodes);
}

#[test]
fn checkpoint_resume_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt.json");
    let spec = ProblemSpec::new(Objective::Min, Mode::Distinct, Topology::Linear, 22, 2);
    let full = solve(spec, &opts()).unwrap();
    let small = SearchOptions {
        node_budget: full.nodes / 3,
        checkpoint: Some(path.clone()),
        checkpoint_every: 1,
        prefix_depth: 12,
        ..opts()
    };
    let err = solve(spec, &small).unwrap_err();
    assert!(matches!(err, SearchError::BudgetExceeded { n: 22, .. }));
    assert!(path.exists());
    let resumed = solve(spec, &SearchOptions { checkpoint: Some(path.clone()), prefix_depth: 12, ..opts() }).unwrap();
    assert_eq!(resumed.value, full.value);
    assert_eq!(resumed.witness_count, full.witness_count);
    assert_eq!(resumed.witnesses, full.witnesses);
    let other = ProblemSpec { n: 21, ..spec };
    assert!(matches!(
        solve(other, &SearchOptions { checkpoint: Some(path), prefix_depth: 12, ..opts() }),
        Err(SearchError::Checkpoint { .. })
    ));
}

#[test]
fn spec_search_examples() {
    let r = solve(ProblemSpec::new(Objective::Min, Mode::Nonequivalent, Topology::Linear, 7, 2), &opts()).unwrap();
    assert_eq!(r.value, 1);
    let mut attaining: Vec<String> = Vec::new();
    for code in 0..128u32 {
        let letters: Vec<u8> = (0..7).map(|b| (code >> b & 1) as u8).collect();
        let w = Word::new(letters, 2).unwrap();
        if census(&w).nonequivalent == 1 {
            attaining.push(w.to_string());
        }
    }
    attaining.sort();
    assert_eq!(attaining, ["aaabaaa", "abababa", "bababab", "bbbabbb"]);
    assert_eq!(r.witness_count, 4);
}

#[test]
fn avoidance_frontiers() {
    let cases = [
        (3, SquareKind::Abelian, 0, 7),
        (3, SquareKind::Abelian, 1, 18),
        (2, SquareKind::Abelian, 0, 3),
        (2, SquareKind::Ordinary, 0, 3),
        (2, SquareKind::Ordinary, 1, 7),
        (2, SquareKind::Ordinary, 2, 18),
    ];
    for (t, kind, s, length) in cases {
        let r = longest_avoiding(&AvoidanceSpec::distinct(t, kind, s, 500), &opts()).unwrap();
        assert_eq!((r.length, r.exhausted), (length, true), "t={t} {kind} s={s}");
    }
    let r = longest_avoiding(&AvoidanceSpec::distinct(3, SquareKind::Abelian, 1, 500), &opts()).unwrap();
    assert_eq!(r.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["abcbabccacccbabcba"]);
}

#[test]
fn ternary_two_squares_reaches_sixty_three() {
    let r = longest_avoiding(&AvoidanceSpec::distinct(3, SquareKind::Abelian, 2, 500), &opts()).unwrap();
    assert!(r.length >= 63);
    if r.exhausted {
        assert_eq!(r.length, 63);
        let known = Word::parse("abbbcbbaccbcccaccbabbbcccabbbacabacccabbbcccacbbabbbcbbaccbccca").unwrap();
        let canonical = canonical_representative(&known, Symmetry::full_for(&known));
        assert!(r.witnesses.contains(&canonical));
    }
}

#[test]
fn quaternary_abelian_square_free_words_reach_the_cap() {
    let r = longest_avoiding(&AvoidanceSpec::distinct(4, SquareKind::Abelian, 0, 100), &opts()).unwrap();
    assert_eq!((r.length, r.cap_reached, r.exhausted), (100, true, false));
    assert_eq!(census(&r.witnesses[0]).total, 0);
}

#[test]
fn avoidance_is_thread_independent() {
    let spec = AvoidanceSpec::distinct(3, SquareKind::Abelian, 2, 500);
    let a = longest_avoiding(&spec, &SearchOptions { threads: Some(1), ..opts() }).unwrap();
    let b = longest_avoiding(&spec, &SearchOptions { threads: Some(4), ..opts() }).unwrap();
    assert_eq!((a.length, &a.witnesses, a.nodes), (b.length, &b.witnesses, b.nodes));
}

#[test]
fn unsolvable_specs_are_rejected() {
    assert!(matches!(
        solve(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 0, 2), &opts()),
        Err(SearchError::InvalidSpec(_))
    ));
    assert!(matches!(
        solve(ProblemSpec::new(Objective::Max, Mode::Total, Topology::Linear, 5, 9), &opts()),
        Err(SearchError::InvalidSpec(_))
    ));
}
