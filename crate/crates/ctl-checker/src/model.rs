use std::collections::{BTreeMap, BTreeSet};

use crate::error::CheckError;

/// A finite labeled transition system with atomic proposition labels.
///
/// This crate is independent of how states are produced; callers convert
/// their state spaces into this shape.
#[derive(Debug, Clone, Default)]
pub struct Model {
    pub state_count: usize,
    pub initial: usize,
    /// Transitions as (source, label, target).
    pub transitions: Vec<(usize, String, usize)>,
    /// For each atom, the set of states where it holds.
    pub atoms: BTreeMap<String, BTreeSet<usize>>,
}

impl Model {
    /// Structural sanity: initial and all transition endpoints and labeled
    /// states must be in range.
    pub fn validate(&self) -> Result<(), CheckError> {
        if self.state_count == 0 {
            return Err(CheckError::InvalidModel("no states".to_string()));
        }
        if self.initial >= self.state_count {
            return Err(CheckError::InvalidModel(format!(
                "initial state {} out of range ({} states)",
                self.initial, self.state_count
            )));
        }
        for (s, _, t) in &self.transitions {
            if *s >= self.state_count || *t >= self.state_count {
                return Err(CheckError::InvalidModel(format!(
                    "transition ({s} -> {t}) out of range ({} states)",
                    self.state_count
                )));
            }
        }
        for (atom, states) in &self.atoms {
            if let Some(&bad) = states.iter().find(|&&s| s >= self.state_count) {
                return Err(CheckError::InvalidModel(format!(
                    "atom `{atom}` labels state {bad} out of range ({} states)",
                    self.state_count
                )));
            }
        }
        Ok(())
    }

    /// Deduplicated successor sets, ignoring labels.
    pub fn successor_sets(&self) -> Vec<BTreeSet<usize>> {
        let mut succ = vec![BTreeSet::new(); self.state_count];
        for (s, _, t) in &self.transitions {
            succ[*s].insert(*t);
        }
        succ
    }
}
