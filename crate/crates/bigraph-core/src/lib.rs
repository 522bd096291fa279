//! Core bigraph data structures and algorithms.
//!
//! A bigraph combines a *place graph* (a forest of nodes under numbered
//! regions, with numbered sites as holes) and a *link graph* (hyperlinks
//! connecting node ports, either closed edges or links opened by an outer
//! name). Nodes carry controls: a named kind with a fixed port arity, an
//! optional parameter, and an atomicity flag (atomic nodes are leaves).
//!
//! This crate provides:
//! - [`Bigraph`]: validated, immutable bigraph values.
//! - [`build_bigraph`]/[`build_ground`]: construction from nested terms.
//! - [`matches`]: occurrence enumeration of open patterns in targets.
//! - [`canonical_key`]/[`canonical_form`]/[`is_isomorphic`]: canonicalization
//!   up to node and edge renaming.

mod bigraph;
mod canon;
mod control;
mod error;
mod matcher;
mod term;

pub use bigraph::{Bigraph, LinkData, LinkId, NodeData, NodeId, Place, Point};
pub use canon::{canonical_form, canonical_key, is_isomorphic};
pub use control::{Control, ControlDecl, ControlTable, ParamValue};
pub use error::BuildError;
pub use matcher::{matches, occurs, Occurrence};
pub use term::{build_bigraph, build_ground, int_param, node, pnode, site, str_param, Term};
