//! State-space exports: Graphviz DOT and a line-oriented JSON document.
//! Both are fully ordered so identical systems export byte-identically.

use std::collections::BTreeMap;

use brs_engine::{TransitionSystem, DEADLOCK_LABEL};
use serde::Serialize;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Render the transition system as a Graphviz digraph. States carry the
/// predicates that hold in them; the initial state is double-circled;
/// deadlock self-loops are dashed.
pub fn dot(ts: &TransitionSystem) -> String {
    let mut by_state: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (name, states) in ts.labels() {
        for &s in states {
            by_state.entry(s).or_default().push(name);
        }
    }

    let mut out = String::from("digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n");
    for id in 0..ts.state_count() {
        let mut label = id.to_string();
        if let Some(names) = by_state.get(&id) {
            for name in names {
                label.push_str("\\n");
                label.push_str(&escape(name));
            }
        }
        let shape = if id == ts.initial() {
            ", shape=doublecircle"
        } else {
            ""
        };
        out.push_str(&format!("  {id} [label=\"{label}\"{shape}];\n"));
    }
    for (src, rule, dst) in ts.transitions() {
        let style = if rule == DEADLOCK_LABEL {
            ", style=dashed"
        } else {
            ""
        };
        out.push_str(&format!(
            "  {src} -> {dst} [label=\"{}\"{style}];\n",
            escape(rule)
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct LtsExport<'a> {
    schema: u32,
    source: &'a str,
    initial: usize,
    states: Vec<StateExport<'a>>,
    transitions: Vec<TransitionExport<'a>>,
}

#[derive(Serialize)]
struct StateExport<'a> {
    id: usize,
    /// Canonical form: equal keys mean isomorphic states.
    key: &'a str,
    labels: Vec<&'a str>,
}

#[derive(Serialize)]
struct TransitionExport<'a> {
    from: usize,
    rule: &'a str,
    to: usize,
}

/// Serialize the transition system as JSON.
pub fn lts_json(ts: &TransitionSystem, source: &str) -> String {
    let mut by_state: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (name, states) in ts.labels() {
        for &s in states {
            by_state.entry(s).or_default().push(name);
        }
    }
    let export = LtsExport {
        schema: 1,
        source,
        initial: ts.initial(),
        states: (0..ts.state_count())
            .map(|id| StateExport {
                id,
                key: ts.key(id),
                labels: by_state.get(&id).cloned().unwrap_or_default(),
            })
            .collect(),
        transitions: ts
            .transitions()
            .iter()
            .map(|(from, rule, to)| TransitionExport {
                from: *from,
                rule,
                to: *to,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&export).expect("report types serialize")
}
