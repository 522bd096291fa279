//! The engine's transition-system builder must agree with a naive explorer
//! that deduplicates states by brute-force isomorphism instead of canonical
//! keys. Agreement is checked up to a state bijection.

use bigraph_core::{build_bigraph, build_ground, node, site, Bigraph, Term};
use brs_engine::{
    build_transition_system, EngineError, InstantiationMap, PriorityClasses, ReactionRule,
};
use testkit::{lts_equivalent, naive_lts, random_ground, rng, test_table};

fn pattern(regions: &[Vec<Term>]) -> Bigraph {
    build_bigraph(&test_table(), regions, &[]).unwrap()
}

fn rule(name: &str, redex: &[Vec<Term>], reactum: &[Vec<Term>], eta: Vec<usize>) -> ReactionRule {
    ReactionRule::new(
        name,
        pattern(redex),
        pattern(reactum),
        InstantiationMap::new(eta),
    )
    .unwrap()
}

/// A consuming rule set: rewrites strictly shrink or preserve node count,
/// so exploration terminates on its own.
fn consuming_rules() -> PriorityClasses {
    PriorityClasses::flat(vec![
        // Collapse any X0 and its contents to an atom.
        rule(
            "collapse",
            &[vec![node("X0", &[], vec![site(0)])]],
            &[vec![node("X3", &[], vec![])]],
            vec![],
        ),
        // Consume a linked pair.
        rule(
            "consume-pair",
            &[vec![node("X4", &["x"], vec![]), node("X4", &["x"], vec![])]],
            &[vec![node("X3", &[], vec![])]],
            vec![],
        ),
        // Unwrap one level of X2, keeping the contents.
        rule(
            "unwrap",
            &[vec![node("X2", &["x", "y"], vec![site(0)])]],
            &[vec![site(0)]],
            vec![0],
        ),
    ])
    .unwrap()
}

/// A rule set with duplication: contents under X1 get copied, so state
/// counts can grow before settling.
fn duplicating_rules() -> PriorityClasses {
    PriorityClasses::flat(vec![
        rule(
            "split",
            &[vec![node("X1", &["x"], vec![site(0)])]],
            &[vec![node("X4", &["x"], vec![]), site(0), site(1)]],
            vec![0, 0],
        ),
        rule(
            "collapse",
            &[vec![node("X0", &[], vec![site(0)])]],
            &[vec![node("X3", &[], vec![])]],
            vec![],
        ),
    ])
    .unwrap()
}

fn check_agreement(rules: &PriorityClasses, seeds: std::ops::Range<u64>, max_nodes: usize) {
    let mut compared = 0usize;
    for seed in seeds {
        let mut r = rng(seed);
        let initial = random_ground(&mut r, max_nodes);
        let naive = match naive_lts(&initial, rules, 60) {
            Ok(n) => n,
            Err(EngineError::StateBudgetExceeded { .. }) => continue,
            Err(e) => panic!("naive exploration failed: {e}"),
        };
        let ts = build_transition_system(&initial, rules, &[], Some(1000))
            .expect("engine exceeded a budget the oracle fit in");
        assert!(
            lts_equivalent(&naive, &ts),
            "engine and naive exploration disagree for seed {seed}\ninitial:\n{}",
            initial.display_term()
        );
        compared += 1;
    }
    assert!(compared >= 20, "too few comparable systems: {compared}");
}

#[test]
fn engine_agrees_with_naive_exploration_consuming() {
    check_agreement(&consuming_rules(), 100..140, 6);
}

#[test]
fn engine_agrees_with_naive_exploration_duplicating() {
    check_agreement(&duplicating_rules(), 200..240, 5);
}

/// Priority classes must prune the same way in both explorers.
#[test]
fn engine_agrees_with_naive_exploration_prioritized() {
    let rules = PriorityClasses::new(vec![
        vec![rule(
            "hi",
            &[vec![node("X3", &[], vec![])]],
            &[vec![node("X0", &[], vec![])]],
            vec![],
        )],
        vec![rule(
            "lo",
            &[vec![node("X4", &["x"], vec![])]],
            &[vec![node("X3", &[], vec![])]],
            vec![],
        )],
    ])
    .unwrap();
    check_agreement(&rules, 300..340, 6);
}

/// Deterministic spot check: a three-token chain collapses to a single
/// deadlocked class with the expected counts.
#[test]
fn chain_counts_match_naive() {
    let t = test_table();
    let initial = build_ground(
        &t,
        &[vec![
            node("X0", &[], vec![node("X3", &[], vec![])]),
            node("X0", &[], vec![node("X3", &[], vec![])]),
            node("X0", &[], vec![]),
        ]],
    )
    .unwrap();
    let rules = consuming_rules();
    let naive = naive_lts(&initial, &rules, 60).unwrap();
    let ts = build_transition_system(&initial, &rules, &[], None).unwrap();
    assert!(lts_equivalent(&naive, &ts));
    assert_eq!(ts.state_count(), naive.states.len());
    assert!(ts.stats().deadlocks > 0);
}
