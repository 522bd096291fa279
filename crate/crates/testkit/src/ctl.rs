//! Path-semantics CTL oracle.
//!
//! Evaluates each operator by direct recursion over the computation tree
//! with on-stack cycle detection, implementing universal operators from
//! their path definitions rather than through dualities. Exponential, for
//! small models only.

use std::collections::{BTreeMap, BTreeSet};

use ctl_checker::{Formula, Model};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Does `f` hold at `state`, by path-semantics evaluation?
pub fn oracle_holds(model: &Model, f: &Formula, state: usize) -> bool {
    let succ = model.successor_sets();
    eval(model, &succ, f, state)
}

fn eval(model: &Model, succ: &[BTreeSet<usize>], f: &Formula, s: usize) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => model.atoms[a].contains(&s),
        Formula::Not(g) => !eval(model, succ, g, s),
        Formula::And(a, b) => eval(model, succ, a, s) && eval(model, succ, b, s),
        Formula::Or(a, b) => eval(model, succ, a, s) || eval(model, succ, b, s),
        Formula::Implies(a, b) => !eval(model, succ, a, s) || eval(model, succ, b, s),
        Formula::Ex(g) => succ[s].iter().any(|&t| eval(model, succ, g, t)),
        Formula::Ax(g) => succ[s].iter().all(|&t| eval(model, succ, g, t)),
        Formula::Eg(g) => eg(model, succ, g, s, &mut BTreeSet::new()),
        Formula::Af(g) => af(model, succ, g, s, &mut BTreeSet::new()),
        Formula::Ef(g) => ef(model, succ, g, s, &mut BTreeSet::new()),
        Formula::Ag(g) => ag(model, succ, g, s, &mut BTreeSet::new()),
        Formula::Eu(a, b) => eu(model, succ, a, b, s, &mut BTreeSet::new()),
        Formula::Au(a, b) => au(model, succ, a, b, s, &mut BTreeSet::new()),
    }
}

/// Some path stays in `g` forever: a cycle (or infinite run) through
/// g-states. Reaching a state already on the stack closes such a cycle.
fn eg(
    m: &Model,
    succ: &[BTreeSet<usize>],
    g: &Formula,
    s: usize,
    stack: &mut BTreeSet<usize>,
) -> bool {
    if !eval(m, succ, g, s) {
        return false;
    }
    if !stack.insert(s) {
        return true;
    }
    let any = succ[s].iter().any(|&t| eg(m, succ, g, t, stack));
    stack.remove(&s);
    any
}

/// Every path eventually reaches `g`. A cycle avoiding `g` refutes it.
fn af(
    m: &Model,
    succ: &[BTreeSet<usize>],
    g: &Formula,
    s: usize,
    stack: &mut BTreeSet<usize>,
) -> bool {
    if eval(m, succ, g, s) {
        return true;
    }
    if !stack.insert(s) {
        return false;
    }
    let all = !succ[s].is_empty() && succ[s].iter().all(|&t| af(m, succ, g, t, stack));
    stack.remove(&s);
    all
}

/// Some path reaches `g`.
fn ef(
    m: &Model,
    succ: &[BTreeSet<usize>],
    g: &Formula,
    s: usize,
    seen: &mut BTreeSet<usize>,
) -> bool {
    if eval(m, succ, g, s) {
        return true;
    }
    if !seen.insert(s) {
        return false;
    }
    succ[s].iter().any(|&t| ef(m, succ, g, t, seen))
}

/// Every reachable state satisfies `g` (total relation assumed).
fn ag(
    m: &Model,
    succ: &[BTreeSet<usize>],
    g: &Formula,
    s: usize,
    seen: &mut BTreeSet<usize>,
) -> bool {
    if !eval(m, succ, g, s) {
        return false;
    }
    if !seen.insert(s) {
        return true;
    }
    succ[s].iter().all(|&t| ag(m, succ, g, t, seen))
}

/// Some path stays in `a` until reaching `b`.
fn eu(
    m: &Model,
    succ: &[BTreeSet<usize>],
    a: &Formula,
    b: &Formula,
    s: usize,
    seen: &mut BTreeSet<usize>,
) -> bool {
    if eval(m, succ, b, s) {
        return true;
    }
    if !eval(m, succ, a, s) {
        return false;
    }
    if !seen.insert(s) {
        return false;
    }
    succ[s].iter().any(|&t| eu(m, succ, a, b, t, seen))
}

/// Every path stays in `a` until reaching `b`, and does reach `b`. A cycle
/// (or exit from `a`) before `b` refutes it.
fn au(
    m: &Model,
    succ: &[BTreeSet<usize>],
    a: &Formula,
    b: &Formula,
    s: usize,
    stack: &mut BTreeSet<usize>,
) -> bool {
    if eval(m, succ, b, s) {
        return true;
    }
    if !eval(m, succ, a, s) {
        return false;
    }
    if !stack.insert(s) {
        return false;
    }
    let all = !succ[s].is_empty() && succ[s].iter().all(|&t| au(m, succ, a, b, t, stack));
    stack.remove(&s);
    all
}

/// Random total model: every state has at least one successor.
pub fn random_model(rng: &mut ChaCha8Rng, max_states: usize, atom_names: &[&str]) -> Model {
    let n = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for s in 0..n {
        let out = rng.gen_range(1..=3usize);
        let mut targets = BTreeSet::new();
        for _ in 0..out {
            targets.insert(rng.gen_range(0..n));
        }
        for (k, t) in targets.into_iter().enumerate() {
            transitions.push((s, format!("t{k}"), t));
        }
    }
    let mut atoms = BTreeMap::new();
    for name in atom_names {
        let mut holds = BTreeSet::new();
        for s in 0..n {
            if rng.gen_bool(0.4) {
                holds.insert(s);
            }
        }
        atoms.insert(name.to_string(), holds);
    }
    Model {
        state_count: n,
        initial: 0,
        transitions,
        atoms,
    }
}

/// Random formula of bounded depth over the given atoms.
pub fn random_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(atoms.choose(rng).expect("atoms nonempty").to_string()),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..12) {
        0 => Formula::Not(Box::new(sub(rng))),
        1 => Formula::And(Box::new(sub(rng)), Box::new(sub(rng))),
        2 => Formula::Or(Box::new(sub(rng)), Box::new(sub(rng))),
        3 => Formula::Implies(Box::new(sub(rng)), Box::new(sub(rng))),
        4 => Formula::Ex(Box::new(sub(rng))),
        5 => Formula::Ax(Box::new(sub(rng))),
        6 => Formula::Ef(Box::new(sub(rng))),
        7 => Formula::Af(Box::new(sub(rng))),
        8 => Formula::Eg(Box::new(sub(rng))),
        9 => Formula::Ag(Box::new(sub(rng))),
        10 => Formula::Eu(Box::new(sub(rng)), Box::new(sub(rng))),
        _ => Formula::Au(Box::new(sub(rng)), Box::new(sub(rng))),
    }
}
