//! Bigraphical reactive system engine.
//!
//! Builds on `bigraph-core`: reaction rules with instantiation maps
//! ([`ReactionRule`]), rule priorities ([`PriorityClasses`]), state
//! predicates ([`Predicate`]), and breadth-first state space exploration up
//! to isomorphism ([`build_transition_system`]).

mod error;
mod priority;
mod rule;
mod system;

pub use error::{EngineError, RuleError};
pub use priority::PriorityClasses;
pub use rule::{InstantiationMap, ReactionRule};
pub use system::{
    build_transition_system, BuildStats, Predicate, TransitionSystem, DEADLOCK_LABEL,
    DEFAULT_MAX_STATES, MAX_STATES_ENV,
};

#[cfg(test)]
mod tests {
    use super::*;
    use bigraph_core::{build_bigraph, build_ground, node, site, Bigraph, ControlTable};

    fn table() -> ControlTable {
        let mut t = ControlTable::new();
        t.declare("A", 0, false).unwrap();
        t.declare("B", 0, true).unwrap();
        t.declare("C", 0, true).unwrap();
        t.declare("N", 0, false).unwrap();
        t.declare("K", 1, true).unwrap();
        t.declare("M", 1, true).unwrap();
        t
    }

    fn pat(t: &ControlTable, terms: Vec<bigraph_core::Term>) -> Bigraph {
        build_bigraph(t, &[terms], &[]).unwrap()
    }

    fn rule(
        t: &ControlTable,
        name: &str,
        redex: Vec<bigraph_core::Term>,
        reactum: Vec<bigraph_core::Term>,
        eta: Vec<usize>,
    ) -> ReactionRule {
        ReactionRule::new(
            name,
            pat(t, redex),
            pat(t, reactum),
            InstantiationMap::new(eta),
        )
        .unwrap()
    }

    #[test]
    fn replaces_node_in_context() {
        let t = table();
        let r = rule(
            &t,
            "swap",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let agent =
            build_ground(&t, &[vec![node("A", &[], vec![node("B", &[], vec![])])]]).unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 1);
        let expect =
            build_ground(&t, &[vec![node("A", &[], vec![node("C", &[], vec![])])]]).unwrap();
        assert!(bigraph_core::is_isomorphic(&out[0], &expect));
    }

    #[test]
    fn parameter_deleted_when_unused() {
        let t = table();
        let r = rule(
            &t,
            "drain",
            vec![node("N", &[], vec![site(0)])],
            vec![node("N", &[], vec![])],
            vec![],
        );
        let agent = build_ground(
            &t,
            &[vec![node(
                "N",
                &[],
                vec![node("B", &[], vec![]), node("C", &[], vec![])],
            )]],
        )
        .unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].node_count(), 1);
    }

    #[test]
    fn parameter_duplicated_shares_links() {
        let t = table();
        let r = rule(
            &t,
            "dup",
            vec![node("N", &[], vec![site(0)])],
            vec![node("N", &[], vec![site(0)]), node("N", &[], vec![site(1)])],
            vec![0, 0],
        );
        // The captured K{x} is linked to an M{x} outside the match.
        let agent = build_ground(
            &t,
            &[vec![
                node("N", &[], vec![node("K", &["x"], vec![])]),
                node("M", &["x"], vec![]),
            ]],
        )
        .unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 1);
        let got = &out[0];
        // Two N nodes, two K copies, one M.
        assert_eq!(got.node_count(), 5);
        // All three ports (two K copies and M) share one link.
        let m = (0..got.node_count())
            .find(|&i| got.node(i).control.name == "M")
            .unwrap();
        let link = got.node(m).ports[0];
        assert_eq!(got.points(link).len(), 3);
    }

    #[test]
    fn outer_name_rejoins_matched_link() {
        let t = table();
        let r = rule(
            &t,
            "retag",
            vec![node("K", &["x"], vec![])],
            vec![node("M", &["x"], vec![])],
            vec![],
        );
        let agent = build_ground(
            &t,
            &[vec![node("K", &["l"], vec![]), node("M", &["l"], vec![])]],
        )
        .unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 1);
        let got = &out[0];
        assert_eq!(got.node_count(), 2);
        assert!(got.nodes().iter().all(|n| n.control.name == "M"));
        let link = got.node(0).ports[0];
        assert_eq!(got.points(link).len(), 2);
    }

    #[test]
    fn closed_reactum_link_becomes_fresh_edge() {
        let t = table();
        let redex = pat(&t, vec![node("B", &[], vec![])]);
        let reactum = build_bigraph(&table(), &[vec![node("K", &["k"], vec![])]], &["k"]).unwrap();
        let r = ReactionRule::new("mint", redex, reactum, InstantiationMap::new(vec![])).unwrap();
        let agent =
            build_ground(&t, &[vec![node("B", &[], vec![]), node("B", &[], vec![])]]).unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 2);
        // Apply once: one K on a fresh single-point edge, one B left.
        let got = &out[0];
        let k = (0..got.node_count())
            .find(|&i| got.node(i).control.name == "K")
            .unwrap();
        assert_eq!(got.points(got.node(k).ports[0]).len(), 1);
    }

    #[test]
    fn dangling_closed_link_is_dropped_open_kept() {
        let t = table();
        // Deleting the only point of a closed link drops the link; an open
        // link survives idle.
        let r = rule(
            &t,
            "del",
            vec![node("K", &["x"], vec![])],
            vec![node("B", &[], vec![])],
            vec![],
        );
        let closed = build_ground(&t, &[vec![node("K", &["l"], vec![])]]).unwrap();
        let out = r.rewrites(&closed).unwrap();
        assert_eq!(out[0].links().len(), 0);
        let open = build_bigraph(&t, &[vec![node("K", &["l"], vec![])]], &[]).unwrap();
        let out = r.rewrites(&open).unwrap();
        assert_eq!(out[0].links().len(), 1);
        assert_eq!(out[0].outer_names(), vec!["l"]);
    }

    #[test]
    fn validation_rejects_bad_rules() {
        let t = table();
        let one = pat(&t, vec![node("B", &[], vec![])]);
        let two = build_bigraph(
            &t,
            &[vec![node("B", &[], vec![])], vec![node("B", &[], vec![])]],
            &[],
        )
        .unwrap();
        assert!(matches!(
            ReactionRule::new("r", one.clone(), two, InstantiationMap::new(vec![])),
            Err(RuleError::RegionCountMismatch { .. })
        ));

        let empty = Bigraph::empty(1);
        assert!(matches!(
            ReactionRule::new("r", empty, one.clone(), InstantiationMap::new(vec![])),
            Err(RuleError::EmptyRedexRegion(0))
        ));

        let region_site = build_bigraph(&t, &[vec![node("B", &[], vec![]), site(0)]], &[]).unwrap();
        assert!(matches!(
            ReactionRule::new("r", region_site, one.clone(), InstantiationMap::new(vec![])),
            Err(RuleError::SiteAtRedexRegion(0))
        ));

        let named = pat(&t, vec![node("K", &["x"], vec![])]);
        assert!(matches!(
            ReactionRule::new("r", one.clone(), named.clone(), InstantiationMap::new(vec![])),
            Err(RuleError::ReactumNameNotInRedex(n)) if n == "x"
        ));

        let sited = build_bigraph(&t, &[vec![node("N", &[], vec![site(0)])]], &[]).unwrap();
        assert!(matches!(
            ReactionRule::new(
                "r",
                one.clone(),
                sited.clone(),
                InstantiationMap::new(vec![])
            ),
            Err(RuleError::InstantiationArity {
                expected: 1,
                actual: 0
            })
        ));
        assert!(matches!(
            ReactionRule::new("r", one, sited, InstantiationMap::new(vec![3])),
            Err(RuleError::InstantiationOutOfRange {
                site: 0,
                target: 3,
                redex_sites: 0
            })
        ));
    }

    #[test]
    fn higher_priority_class_suppresses_lower() {
        let t = table();
        let hi = rule(
            &t,
            "hi",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let lo = rule(
            &t,
            "lo",
            vec![node("N", &[], vec![site(0)])],
            vec![node("A", &[], vec![site(0)])],
            vec![0],
        );
        let classes = PriorityClasses::new(vec![vec![hi], vec![lo]]).unwrap();
        // Both a B and an N present: only "hi" fires.
        let agent =
            build_ground(&t, &[vec![node("B", &[], vec![]), node("N", &[], vec![])]]).unwrap();
        let succ = classes.successors(&agent).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, "hi");
        // No B: "lo" may fire.
        let agent = build_ground(&t, &[vec![node("N", &[], vec![])]]).unwrap();
        let succ = classes.successors(&agent).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, "lo");
    }

    #[test]
    fn duplicate_rule_names_rejected() {
        let t = table();
        let a = rule(
            &t,
            "same",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let b = rule(
            &t,
            "same",
            vec![node("C", &[], vec![])],
            vec![node("B", &[], vec![])],
            vec![],
        );
        assert!(matches!(
            PriorityClasses::new(vec![vec![a], vec![b]]),
            Err(RuleError::DuplicateRuleName(n)) if n == "same"
        ));
        assert!(matches!(
            PriorityClasses::new(vec![vec![]]),
            Err(RuleError::NoRules)
        ));
    }

    #[test]
    fn explores_chain_to_deadlock() {
        let t = table();
        // B -> C, C deadlocks.
        let r = rule(
            &t,
            "step",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let classes = PriorityClasses::flat(vec![r]).unwrap();
        let agent = build_ground(&t, &[vec![node("B", &[], vec![])]]).unwrap();
        let ts = build_transition_system(&agent, &classes, &[], None).unwrap();
        assert_eq!(ts.state_count(), 2);
        assert_eq!(ts.stats().deadlocks, 1);
        let arcs: Vec<_> = ts.transitions().iter().cloned().collect();
        assert_eq!(
            arcs,
            vec![
                (0, "step".to_string(), 1),
                (1, DEADLOCK_LABEL.to_string(), 1)
            ]
        );
    }

    #[test]
    fn isomorphic_successors_collapse() {
        let t = table();
        // Two Bs: applying the rule to either yields isomorphic agents.
        let r = rule(
            &t,
            "step",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let classes = PriorityClasses::flat(vec![r]).unwrap();
        let agent =
            build_ground(&t, &[vec![node("B", &[], vec![]), node("B", &[], vec![])]]).unwrap();
        let ts = build_transition_system(&agent, &classes, &[], None).unwrap();
        // States: BB, BC, CC.
        assert_eq!(ts.state_count(), 3);
        // Raw occurrences: 2 from BB, 1 from BC, 0 from CC.
        assert_eq!(ts.stats().raw_occurrences, 3);
    }

    #[test]
    fn state_budget_is_enforced() {
        let t = table();
        let r = rule(
            &t,
            "grow",
            vec![node("N", &[], vec![site(0)])],
            vec![node("N", &[], vec![node("B", &[], vec![]), site(0)])],
            vec![0],
        );
        let classes = PriorityClasses::flat(vec![r]).unwrap();
        let agent = build_ground(&t, &[vec![node("N", &[], vec![])]]).unwrap();
        let err = build_transition_system(&agent, &classes, &[], Some(5)).unwrap_err();
        assert!(matches!(
            err,
            EngineError::StateBudgetExceeded { budget: 5, .. }
        ));
    }

    #[test]
    fn predicates_label_states() {
        let t = table();
        let r = rule(
            &t,
            "step",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let classes = PriorityClasses::flat(vec![r]).unwrap();
        let agent =
            build_ground(&t, &[vec![node("A", &[], vec![node("B", &[], vec![])])]]).unwrap();
        let has_c = Predicate::new("hasC", pat(&t, vec![node("C", &[], vec![])]));
        let ts = build_transition_system(&agent, &classes, &[has_c], None).unwrap();
        assert_eq!(ts.state_count(), 2);
        let labeled = &ts.labels()["hasC"];
        assert!(!labeled.contains(&0));
        assert!(labeled.contains(&1));
    }

    #[test]
    fn numbering_is_rule_order_independent() {
        let t = table();
        let r1 = rule(
            &t,
            "b2c",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let r2 = rule(
            &t,
            "b2a",
            vec![node("B", &[], vec![])],
            vec![node("A", &[], vec![])],
            vec![],
        );
        let agent = build_ground(&t, &[vec![node("B", &[], vec![])]]).unwrap();
        let fwd = PriorityClasses::flat(vec![r1.clone(), r2.clone()]).unwrap();
        let rev = PriorityClasses::flat(vec![r2, r1]).unwrap();
        let ts1 = build_transition_system(&agent, &fwd, &[], None).unwrap();
        let ts2 = build_transition_system(&agent, &rev, &[], None).unwrap();
        assert_eq!(ts1.transitions(), ts2.transitions());
        assert_eq!(ts1.state_count(), ts2.state_count());
        for i in 0..ts1.state_count() {
            assert_eq!(ts1.key(i), ts2.key(i));
        }
    }

    #[test]
    fn rejects_agent_with_sites() {
        let t = table();
        let r = rule(
            &t,
            "step",
            vec![node("B", &[], vec![])],
            vec![node("C", &[], vec![])],
            vec![],
        );
        let agent = build_bigraph(&t, &[vec![node("B", &[], vec![]), site(0)]], &[]).unwrap();
        let occs = r.occurrences(&agent);
        assert!(!occs.is_empty());
        assert_eq!(r.apply(&agent, &occs[0]), Err(EngineError::TargetNotGround));
    }

    #[test]
    fn promotes_contents_to_context_via_region_site() {
        let t = table();
        // Dissolve an N wrapper: its contents move up to N's parent.
        let redex = build_bigraph(&t, &[vec![node("N", &[], vec![site(0)])]], &[]).unwrap();
        let reactum = build_bigraph(&t, &[vec![site(0)]], &[]).unwrap();
        let r =
            ReactionRule::new("dissolve", redex, reactum, InstantiationMap::new(vec![0])).unwrap();
        let agent = build_ground(
            &t,
            &[vec![node(
                "A",
                &[],
                vec![node(
                    "N",
                    &[],
                    vec![node("B", &[], vec![]), node("C", &[], vec![])],
                )],
            )]],
        )
        .unwrap();
        let out = r.rewrites(&agent).unwrap();
        assert_eq!(out.len(), 1);
        let expect = build_ground(
            &t,
            &[vec![node(
                "A",
                &[],
                vec![node("B", &[], vec![]), node("C", &[], vec![])],
            )]],
        )
        .unwrap();
        assert!(bigraph_core::is_isomorphic(&out[0], &expect));
    }
}
