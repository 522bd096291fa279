//! Test support for the workspace: seeded structure generators and
//! brute-force oracles for matching, isomorphism, transition-system
//! construction, and CTL satisfaction. Everything here is written
//! independently of the engine's algorithms so disagreements point at
//! real bugs rather than shared assumptions.

pub mod ctl;
pub mod gen;
pub mod lts;
pub mod oracle;

pub use ctl::{oracle_holds, random_formula, random_model};
pub use gen::{
    certified_non_isomorphic, planted_pattern, random_ground, random_pattern, random_relabel, rng,
    test_table,
};
pub use lts::{lts_equivalent, naive_lts, NaiveLts};
pub use oracle::{oracle_isomorphic, oracle_matches};
