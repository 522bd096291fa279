use thiserror::Error;

/// Errors raised while validating reaction rules or priority classes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    /// Redex and reactum must have the same number of regions.
    #[error("redex has {redex} regions but reactum has {reactum}")]
    RegionCountMismatch { redex: usize, reactum: usize },

    /// Every redex region must contain at least one node.
    #[error("redex region {0} is empty")]
    EmptyRedexRegion(usize),

    /// Redex sites must sit under nodes, not directly under regions.
    #[error("redex has a site directly under region {0}")]
    SiteAtRedexRegion(usize),

    /// Every outer name of the reactum must also name a redex link.
    #[error("reactum uses outer name `{0}` which the redex does not bind")]
    ReactumNameNotInRedex(String),

    /// Every redex link must have at least one point.
    #[error("redex link {0} is idle (no points)")]
    IdleRedexLink(usize),

    /// The instantiation map must have one entry per reactum site.
    #[error("instantiation map has {actual} entries but the reactum has {expected} sites")]
    InstantiationArity { expected: usize, actual: usize },

    /// Instantiation map entries must name redex sites.
    #[error(
        "instantiation map sends reactum site {site} to redex site {target}, \
         but the redex has only {redex_sites} sites"
    )]
    InstantiationOutOfRange {
        site: usize,
        target: usize,
        redex_sites: usize,
    },

    /// Rule names must be unique across all priority classes.
    #[error("duplicate rule name `{0}`")]
    DuplicateRuleName(String),

    /// A priority structure needs at least one class with at least one rule.
    #[error("priority classes contain no rules")]
    NoRules,
}

/// Errors raised while applying rules or building a transition system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// Reaction targets must be agents: bigraphs without sites.
    #[error("reaction target has sites; agents must have none")]
    TargetNotGround,

    /// State space exploration hit the configured budget.
    #[error(
        "state budget of {budget} exceeded: {explored} states explored, \
         {pending} discovered but unexplored"
    )]
    StateBudgetExceeded {
        budget: usize,
        explored: usize,
        pending: usize,
    },
}
