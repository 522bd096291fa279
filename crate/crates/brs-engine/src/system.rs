//! Transition system construction by breadth-first state space exploration.
//!
//! States are equivalence classes of agents up to isomorphism, keyed by
//! canonical form. Exploration order and state numbering are independent of
//! rule declaration order: the successors of each expanded state are
//! canonicalized, deduplicated, and newly discovered states are numbered in
//! sorted key order.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use bigraph_core::{canonical_key, occurs, Bigraph};

use crate::error::EngineError;
use crate::priority::PriorityClasses;

/// Transition label attached to states with no outgoing reaction.
pub const DEADLOCK_LABEL: &str = "__deadlock";

/// Environment variable overriding the default state budget.
pub const MAX_STATES_ENV: &str = "BIGRADY_MAX_STATES";

/// Default bound on the number of explored states.
pub const DEFAULT_MAX_STATES: usize = 100_000;

/// A named state predicate: a state is labeled iff the pattern occurs in it.
#[derive(Debug, Clone)]
pub struct Predicate {
    pub name: String,
    pub pattern: Bigraph,
}

impl Predicate {
    pub fn new(name: &str, pattern: Bigraph) -> Self {
        Predicate {
            name: name.to_string(),
            pattern,
        }
    }

    pub fn holds(&self, state: &Bigraph) -> bool {
        occurs(&self.pattern, state)
    }
}

/// Exploration statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// States discovered (= states explored; exploration runs to closure).
    pub states: usize,
    /// Distinct transitions, deadlock self-loops included.
    pub transitions: usize,
    /// Rule applications before isomorphism deduplication, summed over all
    /// expanded states. Diagnostic only.
    pub raw_occurrences: usize,
    /// States with no outgoing reaction.
    pub deadlocks: usize,
}

/// An explored labeled transition system.
#[derive(Debug, Clone)]
pub struct TransitionSystem {
    states: Vec<Bigraph>,
    keys: Vec<String>,
    transitions: BTreeSet<(usize, String, usize)>,
    labels: BTreeMap<String, BTreeSet<usize>>,
    stats: BuildStats,
}

impl TransitionSystem {
    /// State 0 is the initial state.
    pub fn initial(&self) -> usize {
        0
    }

    pub fn states(&self) -> &[Bigraph] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &Bigraph {
        &self.states[id]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Canonical key of a state, as used for deduplication.
    pub fn key(&self, id: usize) -> &str {
        &self.keys[id]
    }

    /// All transitions as (source, rule name, target), sorted.
    pub fn transitions(&self) -> &BTreeSet<(usize, String, usize)> {
        &self.transitions
    }

    /// Outgoing transitions of one state.
    pub fn outgoing(&self, state: usize) -> impl Iterator<Item = &(usize, String, usize)> {
        self.transitions
            .range((state, String::new(), 0)..(state + 1, String::new(), 0))
    }

    /// States satisfying each predicate, keyed by predicate name.
    pub fn labels(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.labels
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }
}

/// Explore the state space of `initial` under `rules`.
///
/// `max_states` falls back to the `BIGRADY_MAX_STATES` environment variable,
/// then to [`DEFAULT_MAX_STATES`]. Exceeding the budget aborts with
/// [`EngineError::StateBudgetExceeded`] carrying partial counts.
pub fn build_transition_system(
    initial: &Bigraph,
    rules: &PriorityClasses,
    predicates: &[Predicate],
    max_states: Option<usize>,
) -> Result<TransitionSystem, EngineError> {
    let budget = max_states.unwrap_or_else(|| {
        std::env::var(MAX_STATES_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_STATES)
    });

    let mut states: Vec<Bigraph> = Vec::new();
    let mut keys: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut transitions: BTreeSet<(usize, String, usize)> = BTreeSet::new();
    let mut stats = BuildStats::default();

    let initial_key = canonical_key(initial);
    index.insert(initial_key.clone(), 0);
    states.push(initial.clone());
    keys.push(initial_key);

    let mut cursor = 0;
    while cursor < states.len() {
        if cursor >= budget {
            return Err(EngineError::StateBudgetExceeded {
                budget,
                explored: cursor,
                pending: states.len() - cursor,
            });
        }
        let successors = rules.successors(&states[cursor])?;
        stats.raw_occurrences += successors.len();
        if successors.is_empty() {
            stats.deadlocks += 1;
            transitions.insert((cursor, DEADLOCK_LABEL.to_string(), cursor));
            cursor += 1;
            continue;
        }

        // Dedup successors by canonical key; number new states in sorted
        // key order so the numbering is rule-order independent.
        let mut batch: BTreeMap<String, Bigraph> = BTreeMap::new();
        let mut arcs: BTreeSet<(String, String)> = BTreeSet::new();
        for (rule, succ) in successors {
            let key = canonical_key(&succ);
            arcs.insert((rule, key.clone()));
            batch.entry(key).or_insert(succ);
        }
        for (key, succ) in batch {
            if !index.contains_key(&key) {
                index.insert(key.clone(), states.len());
                states.push(succ);
                keys.push(key);
            }
        }
        for (rule, key) in arcs {
            let target = index[&key];
            transitions.insert((cursor, rule, target));
        }
        cursor += 1;
    }

    stats.states = states.len();
    stats.transitions = transitions.len();

    let mut labels: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for p in predicates {
        let mut holds = BTreeSet::new();
        for (id, state) in states.iter().enumerate() {
            if p.holds(state) {
                holds.insert(id);
            }
        }
        labels.insert(p.name.clone(), holds);
    }

    Ok(TransitionSystem {
        states,
        keys,
        transitions,
        labels,
        stats,
    })
}
