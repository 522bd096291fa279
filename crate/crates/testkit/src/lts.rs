//! Naive state space exploration, as an oracle for the engine's builder.
//!
//! Deduplicates states by pairwise brute-force isomorphism instead of
//! canonical keys, numbers states in discovery order, and compares against
//! an engine-built transition system through an explicit isomorphism-based
//! state correspondence. Only usable on small systems.

use std::collections::BTreeSet;

use bigraph_core::Bigraph;
use brs_engine::{EngineError, PriorityClasses, TransitionSystem, DEADLOCK_LABEL};

use crate::oracle::oracle_isomorphic;

/// A naively explored transition system.
pub struct NaiveLts {
    pub states: Vec<Bigraph>,
    pub transitions: BTreeSet<(usize, String, usize)>,
}

/// Explore by linear-scan isomorphism dedup, capped at `cap` states.
pub fn naive_lts(
    initial: &Bigraph,
    rules: &PriorityClasses,
    cap: usize,
) -> Result<NaiveLts, EngineError> {
    let mut states = vec![initial.clone()];
    let mut transitions = BTreeSet::new();
    let mut cursor = 0;
    while cursor < states.len() {
        if states.len() > cap {
            return Err(EngineError::StateBudgetExceeded {
                budget: cap,
                explored: cursor,
                pending: states.len() - cursor,
            });
        }
        let succ = rules.successors(&states[cursor])?;
        if succ.is_empty() {
            transitions.insert((cursor, DEADLOCK_LABEL.to_string(), cursor));
            cursor += 1;
            continue;
        }
        for (rule, next) in succ {
            let id = match states.iter().position(|s| oracle_isomorphic(s, &next)) {
                Some(id) => id,
                None => {
                    states.push(next);
                    states.len() - 1
                }
            };
            transitions.insert((cursor, rule, id));
        }
        cursor += 1;
    }
    Ok(NaiveLts {
        states,
        transitions,
    })
}

/// Check a naive exploration and an engine-built system describe the same
/// labeled graph: a state bijection maps initial to initial and transition
/// sets onto each other exactly.
pub fn lts_equivalent(naive: &NaiveLts, ts: &TransitionSystem) -> bool {
    if naive.states.len() != ts.state_count() {
        return false;
    }
    // Correspondence by isomorphism; must be a bijection.
    let mut to_engine = vec![usize::MAX; naive.states.len()];
    let mut taken = vec![false; ts.state_count()];
    for (i, s) in naive.states.iter().enumerate() {
        let mut found = None;
        for (j, t) in taken.iter().enumerate() {
            if !*t && oracle_isomorphic(s, ts.state(j)) {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => {
                to_engine[i] = j;
                taken[j] = true;
            }
            None => return false,
        }
    }
    if to_engine[0] != ts.initial() {
        return false;
    }
    let mapped: BTreeSet<(usize, String, usize)> = naive
        .transitions
        .iter()
        .map(|(s, r, t)| (to_engine[*s], r.clone(), to_engine[*t]))
        .collect();
    mapped == *ts.transitions()
}
