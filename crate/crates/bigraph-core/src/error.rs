use thiserror::Error;

/// Errors raised while constructing or validating a bigraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    /// A control name was used that is not declared in the control table.
    #[error("unknown control `{0}`")]
    UnknownControl(String),

    /// A control was re-declared with a different arity or atomicity.
    #[error("control `{0}` declared twice with conflicting signatures")]
    ConflictingControl(String),

    /// A node carries a number of ports different from its control's arity.
    #[error("control `{control}` has arity {expected} but node {node} has {actual} ports")]
    ArityMismatch {
        control: String,
        node: usize,
        expected: usize,
        actual: usize,
    },

    /// The parent relation contains a cycle, so the place graph is not a forest.
    #[error("place graph contains a cycle through node {0}")]
    PlaceCycle(usize),

    /// An atomic node was given children or a site.
    #[error("atomic control `{control}` on node {node} cannot contain children or sites")]
    AtomicWithChildren { control: String, node: usize },

    /// A parent reference points at a region or node that does not exist.
    #[error("invalid parent reference {reference} (regions: {regions}, nodes: {nodes})")]
    InvalidParent {
        reference: String,
        regions: usize,
        nodes: usize,
    },

    /// A port references a link index that does not exist.
    #[error("node {node} port {port} references missing link {link}")]
    InvalidLink {
        node: usize,
        port: usize,
        link: usize,
    },

    /// Two links carry the same outer name.
    #[error("outer name `{0}` is bound to two different links")]
    DuplicateName(String),

    /// Site indices in a term were not consecutive starting from zero.
    #[error("site indices must be consecutive from 0; found {found:?}")]
    SiteNumbering { found: Vec<usize> },

    /// A control instance carried a parameter where none is expected, or vice versa.
    #[error("control `{control}`: {message}")]
    BadParameter { control: String, message: String },
}
