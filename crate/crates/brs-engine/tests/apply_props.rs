//! Structural properties of rewriting, driven by seeded random agents.

use bigraph_core::{build_bigraph, canonical_key, node, site, Bigraph, Term};
use brs_engine::{InstantiationMap, PriorityClasses, ReactionRule};
use proptest::prelude::*;
use testkit::{random_ground, random_relabel, rng, test_table};

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

fn mixed_rules() -> PriorityClasses {
    PriorityClasses::flat(vec![
        rule(
            "collapse",
            &[vec![node("X0", &[], vec![site(0)])]],
            &[vec![node("X3", &[], vec![])]],
            vec![],
        ),
        rule(
            "split",
            &[vec![node("X1", &["x"], vec![site(0)])]],
            &[vec![node("X4", &["x"], vec![]), site(0), site(1)]],
            vec![0, 0],
        ),
        rule(
            "rewire",
            &[vec![node("X2", &["x", "y"], vec![site(0)])]],
            &[vec![node("X1", &["y"], vec![site(0)])]],
            vec![0],
        ),
    ])
    .unwrap()
}

proptest! {
    /// Rewriting never invents sites, regions, or outer names: successors
    /// of an agent keep its region count and exact outer-name set.
    #[test]
    fn successors_preserve_interfaces(seed in 0u64..5000) {
        let mut r = rng(seed);
        let agent = random_ground(&mut r, 6);
        let rules = mixed_rules();
        for (_, succ) in rules.successors(&agent).unwrap() {
            prop_assert!(succ.sites().is_empty());
            prop_assert_eq!(succ.regions(), agent.regions());
            prop_assert_eq!(succ.outer_names(), agent.outer_names());
        }
    }

    /// Rewriting is isomorphism-respecting: relabeled agents produce the
    /// same multiset of successor keys.
    #[test]
    fn successors_respect_isomorphism(seed in 0u64..5000) {
        let mut r = rng(seed);
        let agent = random_ground(&mut r, 6);
        let relabeled = random_relabel(&mut r, &agent);
        let rules = mixed_rules();
        let keys = |g: &Bigraph| {
            let mut v: Vec<String> = rules
                .successors(g)
                .unwrap()
                .iter()
                .map(|(_, s)| canonical_key(s))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(keys(&agent), keys(&relabeled));
    }

    /// Every reported occurrence really rewrites: apply succeeds and the
    /// result is a well-formed ground bigraph.
    #[test]
    fn occurrences_all_apply(seed in 0u64..5000) {
        let mut r = rng(seed);
        let agent = random_ground(&mut r, 6);
        for rule in mixed_rules().rules() {
            for occ in rule.occurrences(&agent) {
                let succ = rule.apply(&agent, &occ).unwrap();
                prop_assert!(succ.sites().is_empty());
            }
        }
    }
}
