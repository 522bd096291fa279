//! Predefined vocabulary, reaction rules, sorting discipline, and
//! temporal properties for checking cross-border data transfers against
//! GDPR-style requirements.
//!
//! The pack supplies the regulatory half of a model: controls for
//! locations, pointers, safeguards, and bookkeeping tokens
//! ([`privacy_catalog`]), the transfer-checking rules grouped into
//! priority classes ([`privacy_rules`]), a sort scheme constraining where
//! those controls may appear ([`sort_scheme_text`]), and the standard
//! compliance predicates and properties ([`standard_properties`]). Models
//! contribute the system half: entities, their interaction rules, and the
//! model-specific `dataTransfer` pattern.

mod catalog;
mod error;
mod location;
mod properties;
mod rules;
mod sorts;

pub use catalog::{privacy_catalog, CatalogEntry, ParamKind, PrivacyCatalog};
pub use error::PackError;
pub use location::{adequacy_link, build_location, Safeguard};
pub use properties::{standard_properties, CtlProperty, StandardProperties};
pub use rules::{privacy_rules, PrivacyRulePack};
pub use sorts::sort_scheme_text;
