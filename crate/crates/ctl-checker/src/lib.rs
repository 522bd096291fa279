//! Explicit-state CTL model checking over finite labeled transition systems.
//!
//! The crate is self-contained: a [`Model`] is a plain state count, initial
//! state, labeled transition list, and atom labeling. [`parse_formula`]
//! turns text like `A[G (p => X q)]` into a [`Formula`]; [`check`] computes
//! the satisfying states by fixpoint iteration; [`counterexample`] extracts
//! finite refutation traces for universal safety formulas, and
//! [`validate_counterexample`] re-checks a trace against the model.

mod ast;
mod check;
mod error;
mod model;
mod parser;

pub use ast::Formula;
pub use check::{check, counterexample, validate_counterexample, CheckResult, Counterexample};
pub use error::{CheckError, SyntaxError};
pub use model::Model;
pub use parser::parse_formula;
