//! Text format for bigraphical reactive models.
//!
//! A model file declares controls, a single initial state, reaction rules
//! with optional instantiation maps, rule priorities, state predicates,
//! temporal properties, and an optional sort discipline. A `use gdpr(...)`
//! import splices in the privacy rule pack: its controls, its rule classes
//! (via the `gdpr` slot in `priorities`), its sort scheme, and its standard
//! predicates and properties, parameterized by the model's own
//! `dataTransfer` predicate.
//!
//! [`parse_model`] checks both syntax and meaning; [`ModelFile::resolve`]
//! turns the tree into engine-ready values. [`fixtures`] returns the
//! bundled example models with their expected outcomes.

mod ast;
mod error;
mod fixtures;
mod parse;
mod print;
mod resolve;

pub use ast::{
    BigDecl, CtrlDecl, CtrlParam, ETerm, Expr, Item, ModelFile, PValue, PredDecl, PriorityClass,
    PropDecl, ReactDecl, UseGdpr,
};
pub use error::DslError;
pub use fixtures::{fixtures, Fixture};
pub use resolve::{ResolvedModel, ResolvedProperty};

/// Parses a model file and validates it end to end: grammar, control
/// references, rule well-formedness, priority coverage, predicate and
/// property bindings, and the sort scheme text.
pub fn parse_model(text: &str) -> Result<ModelFile, DslError> {
    let file = parse::parse_text(text)?;
    resolve::resolve_model(&file)?;
    Ok(file)
}

impl ModelFile {
    /// Builds the engine-ready form of this model.
    pub fn resolve(&self) -> Result<ResolvedModel, DslError> {
        resolve::resolve_model(self)
    }
}
