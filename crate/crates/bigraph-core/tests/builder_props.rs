//! Property tests for the term builder: well-formed terms always build,
//! and each malformation is rejected with the matching error.

use bigraph_core::{
    build_bigraph, build_ground, node, site, BuildError, ControlTable, Place, Term,
};
use proptest::prelude::*;

fn table() -> ControlTable {
    let mut t = ControlTable::new();
    t.declare("A", 0, false).unwrap();
    t.declare("B", 1, false).unwrap();
    t.declare("C", 2, false).unwrap();
    t.declare("T", 0, true).unwrap();
    t.declare("U", 1, true).unwrap();
    t
}

/// Terms over the fixture table, always arity-correct and never putting
/// children under an atomic control.
fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(node("T", &[], vec![])),
        (0usize..3).prop_map(|i| node("U", &[&format!("x{i}")], vec![])),
        Just(node("A", &[], vec![])),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        (
            prop::collection::vec(inner, 0..3),
            0usize..3,
            0usize..3,
            prop_oneof![Just(0usize), Just(1), Just(2)],
        )
            .prop_map(|(children, l0, l1, which)| match which {
                0 => node("A", &[], children),
                1 => node("B", &[&format!("x{l0}")], children),
                _ => node("C", &[&format!("x{l0}"), &format!("x{l1}")], children),
            })
    })
}

fn count_nodes(t: &Term) -> usize {
    match t {
        Term::Node { children, .. } => 1 + children.iter().map(count_nodes).sum::<usize>(),
        Term::Site(_) => 0,
    }
}

proptest! {
    #[test]
    fn well_formed_terms_build(forest in prop::collection::vec(term_strategy(), 1..4)) {
        let t = table();
        let expected: usize = forest.iter().map(count_nodes).sum();
        let g = build_ground(&t, &[forest]).expect("well-formed term rejected");
        prop_assert_eq!(g.node_count(), expected);
        prop_assert_eq!(g.regions(), 1);
        prop_assert!(g.is_ground());
        // Ground build closes every name.
        prop_assert!(g.outer_names().is_empty());
        // Every parent link is consistent.
        for (id, data) in g.nodes().iter().enumerate() {
            if let Place::Node(p) = data.parent {
                prop_assert!(g.children(Place::Node(p)).contains(&id));
            }
        }
    }

    #[test]
    fn open_names_survive_when_not_closed(l in 0usize..3) {
        let t = table();
        let name = format!("x{l}");
        let g = build_bigraph(&t, &[vec![node("B", &[&name], vec![])]], &[]).unwrap();
        prop_assert_eq!(g.outer_names(), vec![name.as_str()]);
        prop_assert!(!g.is_ground() || g.sites().is_empty());
    }
}

#[test]
fn unknown_control_is_rejected() {
    let t = table();
    let err = build_ground(&t, &[vec![node("Zed", &[], vec![])]]).unwrap_err();
    assert!(matches!(err, BuildError::UnknownControl(name) if name == "Zed"));
}

#[test]
fn arity_mismatch_is_rejected() {
    let t = table();
    let err = build_ground(&t, &[vec![node("B", &[], vec![])]]).unwrap_err();
    assert!(matches!(
        err,
        BuildError::ArityMismatch {
            expected: 1,
            actual: 0,
            ..
        }
    ));
    let err = build_ground(&t, &[vec![node("A", &["x"], vec![])]]).unwrap_err();
    assert!(matches!(
        err,
        BuildError::ArityMismatch {
            expected: 0,
            actual: 1,
            ..
        }
    ));
}

#[test]
fn atomic_with_children_is_rejected() {
    let t = table();
    let err = build_ground(&t, &[vec![node("T", &[], vec![node("A", &[], vec![])])]]).unwrap_err();
    assert!(matches!(err, BuildError::AtomicWithChildren { .. }));
}

#[test]
fn site_numbering_must_be_dense_from_zero() {
    let t = table();
    // Site 1 with no site 0.
    let err = build_bigraph(&t, &[vec![node("A", &[], vec![site(1)])]], &[]).unwrap_err();
    assert!(matches!(err, BuildError::SiteNumbering { .. }));
    // Duplicate site index.
    let err = build_bigraph(&t, &[vec![node("A", &[], vec![site(0), site(0)])]], &[]).unwrap_err();
    assert!(matches!(err, BuildError::SiteNumbering { .. }));
    // Dense 0..2 is fine, in either textual order.
    let g = build_bigraph(&t, &[vec![node("A", &[], vec![site(1), site(0)])]], &[]).unwrap();
    assert_eq!(g.sites().len(), 2);
}
