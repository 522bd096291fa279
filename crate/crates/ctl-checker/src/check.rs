//! Fixpoint model checking and counterexample extraction.
//!
//! `EX`, `EG`, and `EU` are computed directly by fixpoint iteration over
//! state sets; the universal forms reduce to them:
//!
//! ```text
//! AX φ      = !EX !φ
//! AF φ      = !EG !φ
//! AG φ      = !E[true U !φ]
//! A[φ U ψ]  = !(E[!ψ U (!φ & !ψ)] | EG !ψ)
//! EF φ      = E[true U φ]
//! ```
//!
//! The transition relation is expected to be total (the state space builder
//! gives deadlocked states a self-loop); on non-total relations terminal
//! states make every `EX`/`EG` false there, the usual convention.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::ast::Formula;
use crate::error::CheckError;
use crate::model::Model;

/// Outcome of checking one formula against a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    /// Whether the formula holds in the initial state.
    pub holds: bool,
    /// All states satisfying the formula.
    pub sat: BTreeSet<usize>,
    /// Largest number of iterations any single fixpoint computation took.
    /// Bounded by `state_count + 1`.
    pub max_iterations: usize,
}

/// Check a formula against a model.
pub fn check(model: &Model, formula: &Formula) -> Result<CheckResult, CheckError> {
    model.validate()?;
    for atom in formula.atoms() {
        if !model.atoms.contains_key(atom) {
            return Err(CheckError::UnknownPredicate(atom.to_string()));
        }
    }
    let succ = model.successor_sets();
    let mut ctx = Ctx {
        model,
        succ,
        max_iterations: 0,
    };
    let sat = ctx.sat(formula);
    Ok(CheckResult {
        holds: sat[model.initial],
        sat: to_set(&sat),
        max_iterations: ctx.max_iterations,
    })
}

struct Ctx<'a> {
    model: &'a Model,
    succ: Vec<BTreeSet<usize>>,
    max_iterations: usize,
}

impl Ctx<'_> {
    fn sat(&mut self, f: &Formula) -> Vec<bool> {
        let n = self.model.state_count;
        match f {
            Formula::True => vec![true; n],
            Formula::False => vec![false; n],
            Formula::Atom(a) => {
                let states = &self.model.atoms[a];
                (0..n).map(|s| states.contains(&s)).collect()
            }
            Formula::Not(g) => neg(&self.sat(g)),
            Formula::And(a, b) => zip_with(&self.sat(a), &self.sat(b), |x, y| x && y),
            Formula::Or(a, b) => zip_with(&self.sat(a), &self.sat(b), |x, y| x || y),
            Formula::Implies(a, b) => zip_with(&self.sat(a), &self.sat(b), |x, y| !x || y),
            Formula::Ex(g) => {
                let sg = self.sat(g);
                self.ex(&sg)
            }
            Formula::Ax(g) => {
                let sg = neg(&self.sat(g));
                neg(&self.ex(&sg))
            }
            Formula::Ef(g) => {
                let sg = self.sat(g);
                self.eu(&vec![true; n], &sg)
            }
            Formula::Af(g) => {
                let sg = neg(&self.sat(g));
                neg(&self.eg(&sg))
            }
            Formula::Eg(g) => {
                let sg = self.sat(g);
                self.eg(&sg)
            }
            Formula::Ag(g) => {
                let sg = neg(&self.sat(g));
                neg(&self.eu(&vec![true; n], &sg))
            }
            Formula::Eu(a, b) => {
                let sa = self.sat(a);
                let sb = self.sat(b);
                self.eu(&sa, &sb)
            }
            Formula::Au(a, b) => {
                let not_b = neg(&self.sat(b));
                let not_a_and_not_b = zip_with(&neg(&self.sat(a)), &not_b, |x, y| x && y);
                let eu = self.eu(&not_b, &not_a_and_not_b);
                let eg = self.eg(&not_b);
                neg(&zip_with(&eu, &eg, |x, y| x || y))
            }
        }
    }

    /// States with a successor in `set`.
    fn ex(&self, set: &[bool]) -> Vec<bool> {
        (0..set.len())
            .map(|s| self.succ[s].iter().any(|&t| set[t]))
            .collect()
    }

    /// Greatest fixpoint: states from which some path stays in `set`.
    fn eg(&mut self, set: &[bool]) -> Vec<bool> {
        let mut cur = set.to_vec();
        let mut iterations = 0;
        loop {
            iterations += 1;
            let mut changed = false;
            for s in 0..cur.len() {
                if cur[s] && !self.succ[s].iter().any(|&t| cur[t]) {
                    cur[s] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.max_iterations = self.max_iterations.max(iterations);
        cur
    }

    /// Least fixpoint: states with some path inside `a` reaching `b`.
    fn eu(&mut self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut cur = b.to_vec();
        let mut iterations = 0;
        loop {
            iterations += 1;
            let mut changed = false;
            for s in 0..cur.len() {
                if !cur[s] && a[s] && self.succ[s].iter().any(|&t| cur[t]) {
                    cur[s] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.max_iterations = self.max_iterations.max(iterations);
        cur
    }
}

fn neg(set: &[bool]) -> Vec<bool> {
    set.iter().map(|&b| !b).collect()
}

fn zip_with(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b.iter()).map(|(&x, &y)| f(x, y)).collect()
}

fn to_set(v: &[bool]) -> BTreeSet<usize> {
    v.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

/// A finite trace refuting a universal safety formula: states from the
/// initial state, with the transition label taken at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub states: Vec<usize>,
    pub rules: Vec<String>,
}

impl Counterexample {
    pub fn last_state(&self) -> usize {
        *self.states.last().expect("trace never empty")
    }

    /// Label of the final step, if the trace has any step.
    pub fn last_rule(&self) -> Option<&str> {
        self.rules.last().map(|s| s.as_str())
    }
}

/// Violation shapes with checkable finite counterexamples.
enum Shape<'a> {
    /// `A[G β]` with β propositional: refuted by reaching `!β`.
    Safety(&'a Formula),
    /// `A[G (p => X q)]` with p, q propositional: refuted by reaching a
    /// p-state and stepping to a `!q` state.
    StepSafety(&'a Formula, &'a Formula),
}

fn shape(formula: &Formula) -> Option<Shape<'_>> {
    let Formula::Ag(body) = formula else {
        return None;
    };
    if body.is_propositional() {
        return Some(Shape::Safety(body));
    }
    if let Formula::Implies(p, x) = body.as_ref() {
        if let Formula::Ax(q) = x.as_ref() {
            if p.is_propositional() && q.is_propositional() {
                return Some(Shape::StepSafety(p, q));
            }
        }
    }
    None
}

/// Extract a counterexample trace for a refuted `A[G β]` or
/// `A[G (p => X q)]` formula. Returns `Ok(None)` when the formula holds or
/// has no supported counterexample shape.
pub fn counterexample(
    model: &Model,
    formula: &Formula,
) -> Result<Option<Counterexample>, CheckError> {
    let result = check(model, formula)?;
    if result.holds {
        return Ok(None);
    }
    let Some(shape) = shape(formula) else {
        return Ok(None);
    };

    // Shortest-path parents over the (sorted) transition list: BFS visits
    // states in index order per layer, so extraction is deterministic.
    let mut arcs: Vec<(usize, String, usize)> = model.transitions.clone();
    arcs.sort();
    let mut parent: BTreeMap<usize, (usize, String)> = BTreeMap::new();
    let mut seen = vec![false; model.state_count];
    seen[model.initial] = true;
    let mut queue = VecDeque::from([model.initial]);
    let mut order = vec![model.initial];
    while let Some(s) = queue.pop_front() {
        for (src, rule, tgt) in arcs.iter().filter(|(src, _, _)| *src == s) {
            if !seen[*tgt] {
                seen[*tgt] = true;
                parent.insert(*tgt, (*src, rule.clone()));
                queue.push_back(*tgt);
                order.push(*tgt);
            }
        }
    }

    let path_to = |target: usize| -> Counterexample {
        let mut states = vec![target];
        let mut rules = Vec::new();
        let mut cur = target;
        while let Some((prev, rule)) = parent.get(&cur) {
            states.push(*prev);
            rules.push(rule.clone());
            cur = *prev;
        }
        states.reverse();
        rules.reverse();
        Counterexample { states, rules }
    };

    match shape {
        Shape::Safety(beta) => {
            let sat_beta = check(model, beta)?.sat;
            let bad = order.iter().copied().find(|s| !sat_beta.contains(s));
            Ok(bad.map(path_to))
        }
        Shape::StepSafety(p, q) => {
            let sat_p = check(model, p)?.sat;
            let sat_q = check(model, q)?.sat;
            for &s in &order {
                if !sat_p.contains(&s) {
                    continue;
                }
                if let Some((_, rule, t)) = arcs
                    .iter()
                    .find(|(src, _, tgt)| *src == s && !sat_q.contains(tgt))
                {
                    let mut cex = path_to(s);
                    cex.states.push(*t);
                    cex.rules.push(rule.clone());
                    return Ok(Some(cex));
                }
            }
            Ok(None)
        }
    }
}

/// Machine-check a counterexample: the trace must start at the initial
/// state, follow real transitions, and end in a state that refutes the
/// formula per its shape.
pub fn validate_counterexample(
    model: &Model,
    formula: &Formula,
    cex: &Counterexample,
) -> Result<(), String> {
    if cex.states.is_empty() {
        return Err("empty trace".to_string());
    }
    if cex.states[0] != model.initial {
        return Err(format!(
            "trace starts at state {} instead of the initial state {}",
            cex.states[0], model.initial
        ));
    }
    if cex.rules.len() + 1 != cex.states.len() {
        return Err(format!(
            "trace has {} states but {} rule labels",
            cex.states.len(),
            cex.rules.len()
        ));
    }
    let arcs: BTreeSet<(usize, &str, usize)> = model
        .transitions
        .iter()
        .map(|(s, r, t)| (*s, r.as_str(), *t))
        .collect();
    for (i, rule) in cex.rules.iter().enumerate() {
        let step = (cex.states[i], rule.as_str(), cex.states[i + 1]);
        if !arcs.contains(&step) {
            return Err(format!(
                "step {} -> {} via `{}` is not a transition of the model",
                step.0, step.2, rule
            ));
        }
    }
    let eval = |f: &Formula, state: usize| -> Result<bool, String> {
        let r = check(model, f).map_err(|e| e.to_string())?;
        Ok(r.sat.contains(&state))
    };
    match shape(formula) {
        Some(Shape::Safety(beta)) => {
            let last = cex.last_state();
            if eval(beta, last)? {
                return Err(format!("final state {last} does not refute the invariant"));
            }
            Ok(())
        }
        Some(Shape::StepSafety(p, q)) => {
            if cex.states.len() < 2 {
                return Err("step violation needs at least two states".to_string());
            }
            let secondlast = cex.states[cex.states.len() - 2];
            let last = cex.last_state();
            if !eval(p, secondlast)? {
                return Err(format!(
                    "state {secondlast} does not satisfy the trigger proposition"
                ));
            }
            if eval(q, last)? {
                return Err(format!("final state {last} satisfies the step obligation"));
            }
            Ok(())
        }
        None => Err("formula shape has no supported counterexample".to_string()),
    }
}
