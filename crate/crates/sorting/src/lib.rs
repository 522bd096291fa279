//! Sorting discipline for bigraphs: schemes assign node sorts to controls
//! and port sorts to their links, with multiset constraints on children and
//! link peers. Checks run statically on initial states and rule sides, or
//! dynamically on every explored state.

mod check;
mod error;
mod expr;
mod parse;
mod scheme;

pub use check::{check_rules, check_sorts, SortDiagnostic, SortLocation};
pub use error::SortError;
pub use expr::SortExpr;
pub use parse::parse_sort_scheme;
pub use scheme::{Member, PortSpec, SortDecl, SortScheme};
