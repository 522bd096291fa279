//! Priority classes over reaction rules.
//!
//! Class 0 is the highest priority. A rule may fire only when no rule in any
//! higher class has an occurrence anywhere in the agent. Within a class all
//! rules are equal.

use bigraph_core::Bigraph;

use crate::error::{EngineError, RuleError};
use crate::rule::ReactionRule;

/// Reaction rules layered into priority classes (index 0 = highest).
#[derive(Debug, Clone)]
pub struct PriorityClasses {
    classes: Vec<Vec<ReactionRule>>,
}

impl PriorityClasses {
    /// Validate class structure: at least one rule overall, unique names.
    pub fn new(classes: Vec<Vec<ReactionRule>>) -> Result<Self, RuleError> {
        let mut names = std::collections::BTreeSet::new();
        let mut any = false;
        for class in &classes {
            for rule in class {
                any = true;
                if !names.insert(rule.name().to_string()) {
                    return Err(RuleError::DuplicateRuleName(rule.name().to_string()));
                }
            }
        }
        if !any {
            return Err(RuleError::NoRules);
        }
        Ok(PriorityClasses { classes })
    }

    /// All rules in one class, without priorities.
    pub fn flat(rules: Vec<ReactionRule>) -> Result<Self, RuleError> {
        PriorityClasses::new(vec![rules])
    }

    pub fn classes(&self) -> &[Vec<ReactionRule>] {
        &self.classes
    }

    pub fn rules(&self) -> impl Iterator<Item = &ReactionRule> {
        self.classes.iter().flatten()
    }

    pub fn rule_count(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    pub fn find(&self, name: &str) -> Option<&ReactionRule> {
        self.rules().find(|r| r.name() == name)
    }

    /// All rewrites of `agent` under the priority discipline: the first
    /// class (in priority order) with any occurrence contributes all of its
    /// rewrites; lower classes are suppressed entirely.
    ///
    /// Results are `(rule name, successor)` pairs in rule order then
    /// occurrence order, one per occurrence, duplicates included.
    pub fn successors(&self, agent: &Bigraph) -> Result<Vec<(String, Bigraph)>, EngineError> {
        for class in &self.classes {
            let mut out = Vec::new();
            for rule in class {
                for occ in rule.occurrences(agent) {
                    out.push((rule.name().to_string(), rule.apply(agent, &occ)?));
                }
            }
            if !out.is_empty() {
                return Ok(out);
            }
        }
        Ok(Vec::new())
    }
}
