//! End-to-end behaviour of the bundled fixture models: parsing, sort
//! conformance, state-space shape, and property verdicts.

use bigraph_core::{build_bigraph, node, occurs, site, Bigraph};
use brs_engine::{build_transition_system, PriorityClasses, TransitionSystem, DEADLOCK_LABEL};
use ctl_checker::{check, counterexample, Model};
use model_dsl::{fixtures, parse_model, Fixture, ResolvedModel};
use sorting::{check_sorts, SortLocation};

fn fixture(name: &str) -> Fixture {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
}

fn resolved(name: &str) -> ResolvedModel {
    parse_model(fixture(name).text)
        .unwrap_or_else(|e| panic!("{name} fails to parse: {e}"))
        .resolve()
        .unwrap_or_else(|e| panic!("{name} fails to resolve: {e}"))
}

fn transition_system(model: &ResolvedModel) -> TransitionSystem {
    let classes = PriorityClasses::new(model.classes.clone()).expect("valid priority classes");
    build_transition_system(&model.initial, &classes, &model.predicates, None)
        .expect("state space fits the default budget")
}

fn ctl_model(ts: &TransitionSystem) -> Model {
    Model {
        state_count: ts.state_count(),
        initial: ts.initial(),
        transitions: ts.transitions().iter().cloned().collect(),
        atoms: ts.labels().clone(),
    }
}

/// Check every declared property and compare against the expected verdicts.
fn assert_verdicts(model: &ResolvedModel, ts: &TransitionSystem, expected: &[(&str, bool)]) {
    let m = ctl_model(ts);
    assert_eq!(model.properties.len(), expected.len());
    for (prop, (name, holds)) in model.properties.iter().zip(expected) {
        assert_eq!(prop.name, *name, "property order is fixed");
        let result = check(&m, &prop.formula).expect("checkable formula");
        assert_eq!(
            result.holds, *holds,
            "{name} expected {holds} on this fixture"
        );
    }
}

#[test]
fn every_fixture_parses_resolves_and_round_trips() {
    for fx in fixtures() {
        let file = parse_model(fx.text).unwrap_or_else(|e| panic!("{} fails: {e}", fx.name));
        let printed = file.to_string();
        let reparsed =
            parse_model(&printed).unwrap_or_else(|e| panic!("{} reprint fails: {e}", fx.name));
        assert_eq!(file, reparsed, "{} survives a print cycle", fx.name);

        let model = file
            .resolve()
            .unwrap_or_else(|e| panic!("{} fails to resolve: {e}", fx.name));
        let names: Vec<&str> = model.properties.iter().map(|p| p.name.as_str()).collect();
        let expected: Vec<&str> = fx.verdicts.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, expected, "{} property names", fx.name);
    }
}

#[test]
fn initial_states_match_their_sort_schemes() {
    for fx in fixtures() {
        let model = resolved(fx.name);
        let Some(scheme) = &model.sorts else {
            assert!(fx.well_sorted, "{} lacks a scheme yet claims ill", fx.name);
            continue;
        };
        let diags = check_sorts(scheme, &model.initial)
            .unwrap_or_else(|e| panic!("{} scheme is unusable: {e}", fx.name));
        if fx.well_sorted {
            assert!(
                diags.is_empty(),
                "{} should be well sorted, got: {diags:?}",
                fx.name
            );
        } else {
            assert!(!diags.is_empty(), "{} should carry diagnostics", fx.name);
        }
    }
}

#[test]
fn misplaced_nodes_are_reported_at_the_node() {
    let model = resolved("illformed-nesting");
    let scheme = model.sorts.as_ref().expect("fixture declares sorts");
    let diags = check_sorts(scheme, &model.initial).unwrap();
    assert_eq!(diags.len(), 1, "one bad placement, one diagnostic");
    assert!(
        matches!(diags[0].location, SortLocation::Node(_)),
        "placement faults name a node: {:?}",
        diags[0]
    );
}

#[test]
fn mismatched_links_are_reported_at_the_link() {
    let model = resolved("illformed-link");
    let scheme = model.sorts.as_ref().expect("fixture declares sorts");
    let diags = check_sorts(scheme, &model.initial).unwrap();
    assert!(!diags.is_empty());
    for d in &diags {
        assert!(
            matches!(d.location, SortLocation::Link(_)),
            "link faults name a link: {d:?}"
        );
    }
}

#[test]
fn toy_counter_builds_a_three_state_chain() {
    let model = resolved("toy-counter");
    let ts = transition_system(&model);
    assert_eq!(ts.state_count(), 3);
    let ticks = ts
        .transitions()
        .iter()
        .filter(|(_, rule, _)| rule == "tick")
        .count();
    assert_eq!(ticks, 2);
    let deadlocks: Vec<_> = ts
        .transitions()
        .iter()
        .filter(|(_, rule, _)| rule == DEADLOCK_LABEL)
        .collect();
    assert_eq!(deadlocks.len(), 1);
    let (src, _, dst) = deadlocks[0];
    assert_eq!(src, dst, "deadlock completion is a self loop");
}

#[test]
fn transfer_demo_moves_the_data_token_once() {
    let model = resolved("transfer-demo");
    let ts = transition_system(&model);
    assert_eq!(ts.state_count(), 2);
    let moves: Vec<_> = ts
        .transitions()
        .iter()
        .filter(|(_, rule, _)| rule == "transD")
        .collect();
    assert_eq!(moves.len(), 1);
    assert_eq!((moves[0].0, moves[0].2), (0, 1));
}

/// A pattern spanning one blocked location entity of the given control.
fn blocked(model: &ResolvedModel, entity: &str) -> Bigraph {
    build_bigraph(
        &model.table,
        &[vec![node(
            "Block",
            &[],
            vec![node(entity, &["l"], vec![site(0)])],
        )]],
        &[],
    )
    .expect("well-formed pattern")
}

#[test]
fn restricted_traffic_is_blocked_before_any_transfer() {
    let fx = fixture("whatsapp-restricted");
    let model = resolved(fx.name);
    let ts = transition_system(&model);

    let labels = ts.labels();
    assert!(!labels["invalidContra"].is_empty(), "contract fault found");
    assert!(!labels["invalidCert"].is_empty(), "certificate fault found");
    assert!(
        labels["dataTransfer"].is_empty(),
        "no transfer ever happens"
    );

    let dc_blocked = blocked(&model, "DC");
    let fb_blocked = blocked(&model, "FB");
    assert!(
        ts.states().iter().any(|s| occurs(&dc_blocked, s)),
        "some state blocks the data controller"
    );
    assert!(
        ts.states().iter().any(|s| occurs(&fb_blocked, s)),
        "some state blocks the receiver"
    );

    assert_verdicts(&model, &ts, fx.verdicts);
}

#[test]
fn certificate_violations_surface_in_the_counterexample() {
    let fx = fixture("whatsapp-violation");
    let model = resolved(fx.name);
    let ts = transition_system(&model);
    assert_verdicts(&model, &ts, fx.verdicts);

    let m = ctl_model(&ts);
    let cert_prop = model
        .properties
        .iter()
        .find(|p| p.name == "invalidCertBlocksTransfer")
        .expect("standard property present");
    let trace = counterexample(&m, &cert_prop.formula)
        .expect("checkable formula")
        .expect("refuted safety formulas produce a trace");
    assert_eq!(trace.last_rule(), Some("privacyViolation"));
    let last = trace.last_state();
    assert!(m.atoms["invalidCert"].contains(&last));
    assert!(m.atoms["dataTransfer"].contains(&last));
}

#[test]
fn expired_certificates_invalidate_and_halt() {
    let fx = fixture("whatsapp-expired");
    let model = resolved(fx.name);
    let ts = transition_system(&model);

    let expiries = ts
        .transitions()
        .iter()
        .filter(|(_, rule, _)| rule == "ExpiredDate")
        .count();
    assert!(expiries >= 1, "the expiry check fires");
    assert!(!ts.labels()["invalidCert"].is_empty());
    assert!(ts.labels()["dataTransfer"].is_empty());

    assert_verdicts(&model, &ts, fx.verdicts);
}

#[test]
#[ignore = "builds the full compliant state space; the acceptance suite runs it"]
fn the_compliant_model_explores_and_transfers() {
    let fx = fixture("whatsapp-compliant");
    let model = resolved(fx.name);
    let ts = transition_system(&model);
    println!("compliant state count: {}", ts.state_count());
    assert!((50..=2000).contains(&ts.state_count()));
    assert!(!ts.labels()["dataTransfer"].is_empty());
    assert_verdicts(&model, &ts, fx.verdicts);
}

#[test]
fn the_compliant_model_resolves_with_the_full_pack() {
    let model = resolved("whatsapp-compliant");
    assert_eq!(model.classes.len(), 5);
    let total: usize = model.classes.iter().map(Vec::len).sum();
    assert_eq!(total, 34, "12 pack rules plus 22 model rules");
    assert_eq!(model.predicates.len(), 6);
    assert_eq!(model.properties.len(), 4);
    assert!(model.sorts.is_some());
    assert_eq!(model.criteria.as_deref(), Some(&[1, 2, 3][..]));
    assert!(model.initial.is_ground());
}
