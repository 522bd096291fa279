//! Reaction rules and their application.
//!
//! A rule `L -> R` rewrites an occurrence of the redex `L` in an agent into
//! an instance of the reactum `R`. Sites in `L` capture parameters (the
//! absorbed subtrees); the instantiation map says which captured parameter
//! fills each reactum site, allowing deletion (parameter never used) and
//! duplication (parameter used by several reactum sites). Copied parameters
//! keep their original links, so duplicates share links with each other and
//! with the context. Outer names of `R` reconnect to whatever link the
//! like-named redex link matched; closed reactum links become fresh edges.

use std::collections::{BTreeMap, BTreeSet};

use bigraph_core::{matches, Bigraph, Control, LinkData, NodeData, NodeId, Occurrence, Place};

use crate::error::{EngineError, RuleError};

/// Maps each reactum site to the redex site whose parameter fills it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstantiationMap(Vec<usize>);

impl InstantiationMap {
    /// `map[i]` is the redex site filling reactum site `i`.
    pub fn new(map: Vec<usize>) -> Self {
        InstantiationMap(map)
    }

    /// The identity map on `n` sites.
    pub fn identity(n: usize) -> Self {
        InstantiationMap((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for InstantiationMap {
    fn from(map: Vec<usize>) -> Self {
        InstantiationMap(map)
    }
}

/// Provisional link identity used while assembling a rewrite result:
/// links inherited from the agent keep their old id, closed reactum links
/// become fresh edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prov {
    Agent(usize),
    Fresh(usize),
}

/// A validated reaction rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionRule {
    name: String,
    redex: Bigraph,
    reactum: Bigraph,
    eta: InstantiationMap,
}

impl ReactionRule {
    /// Validate and construct a rule.
    ///
    /// Redex requirements: every region inhabited, no region-level sites, no
    /// idle links. The reactum may use only outer names the redex binds, and
    /// the instantiation map must cover exactly the reactum's sites with
    /// redex site indices.
    pub fn new(
        name: &str,
        redex: Bigraph,
        reactum: Bigraph,
        eta: InstantiationMap,
    ) -> Result<Self, RuleError> {
        if redex.regions() != reactum.regions() {
            return Err(RuleError::RegionCountMismatch {
                redex: redex.regions(),
                reactum: reactum.regions(),
            });
        }
        for r in 0..redex.regions() {
            if redex.children(Place::Region(r)).is_empty() {
                return Err(RuleError::EmptyRedexRegion(r));
            }
            if !redex.sites_at(Place::Region(r)).is_empty() {
                return Err(RuleError::SiteAtRedexRegion(r));
            }
        }
        for l in 0..redex.links().len() {
            if redex.points(l).is_empty() {
                return Err(RuleError::IdleRedexLink(l));
            }
        }
        let redex_names: BTreeSet<&str> = redex.outer_names().into_iter().collect();
        for name in reactum.outer_names() {
            if !redex_names.contains(name) {
                return Err(RuleError::ReactumNameNotInRedex(name.to_string()));
            }
        }
        if eta.len() != reactum.sites().len() {
            return Err(RuleError::InstantiationArity {
                expected: reactum.sites().len(),
                actual: eta.len(),
            });
        }
        for (site, &target) in eta.as_slice().iter().enumerate() {
            if target >= redex.sites().len() {
                return Err(RuleError::InstantiationOutOfRange {
                    site,
                    target,
                    redex_sites: redex.sites().len(),
                });
            }
        }
        Ok(ReactionRule {
            name: name.to_string(),
            redex,
            reactum,
            eta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn redex(&self) -> &Bigraph {
        &self.redex
    }

    pub fn reactum(&self) -> &Bigraph {
        &self.reactum
    }

    pub fn eta(&self) -> &InstantiationMap {
        &self.eta
    }

    /// All occurrences of the redex in `agent`.
    pub fn occurrences(&self, agent: &Bigraph) -> Vec<Occurrence> {
        matches(&self.redex, agent)
    }

    /// Rewrite one occurrence of the redex in `agent`.
    ///
    /// The occurrence must come from [`ReactionRule::occurrences`] on the
    /// same agent; internal invariants are debug-asserted, not re-validated.
    pub fn apply(&self, agent: &Bigraph, occ: &Occurrence) -> Result<Bigraph, EngineError> {
        if !agent.sites().is_empty() {
            return Err(EngineError::TargetNotGround);
        }
        let contents = occ.contents(agent);

        // Survivors keep their relative order; new ids assigned densely.
        let mut new_id: BTreeMap<NodeId, usize> = BTreeMap::new();
        for id in 0..agent.node_count() {
            if !contents.contains(&id) {
                let next = new_id.len();
                new_id.insert(id, next);
            }
        }

        let mut nodes: Vec<(Control, Place, Vec<Prov>)> = Vec::new();
        for &old in new_id.keys() {
            let n = agent.node(old);
            let parent = match n.parent {
                Place::Region(r) => Place::Region(r),
                Place::Node(p) => {
                    debug_assert!(
                        !contents.contains(&p),
                        "context node hangs under deleted material"
                    );
                    Place::Node(new_id[&p])
                }
            };
            let ports = n.ports.iter().map(|&l| Prov::Agent(l)).collect();
            nodes.push((n.control.clone(), parent, ports));
        }

        // Anchor places translated into the new node numbering. Anchors are
        // context places, so node anchors always survive.
        let anchor = |place: Place| -> Place {
            match place {
                Place::Region(r) => Place::Region(r),
                Place::Node(n) => Place::Node(new_id[&n]),
            }
        };

        // Closed reactum links numbered by reactum link id.
        let mut fresh: BTreeMap<usize, usize> = BTreeMap::new();
        for l in 0..self.reactum.links().len() {
            if !self.reactum.link(l).is_open() {
                let next = fresh.len();
                fresh.insert(l, next);
            }
        }
        let reactum_link = |l: usize| -> Prov {
            match &self.reactum.link(l).name {
                Some(name) => {
                    let redex_link = self
                        .redex
                        .link_by_name(name)
                        .expect("validated: reactum names bound by redex");
                    Prov::Agent(occ.links[&redex_link])
                }
                None => Prov::Fresh(fresh[&l]),
            }
        };

        // Instantiate reactum nodes, parents before children.
        let mut reactum_new: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut stack: Vec<NodeId> = Vec::new();
        for r in (0..self.reactum.regions()).rev() {
            for &top in self.reactum.children(Place::Region(r)).iter().rev() {
                stack.push(top);
            }
        }
        while let Some(rn) = stack.pop() {
            let data = self.reactum.node(rn);
            let parent = match data.parent {
                Place::Region(r) => anchor(occ.regions[r]),
                Place::Node(p) => Place::Node(reactum_new[&p]),
            };
            let ports = data.ports.iter().map(|&l| reactum_link(l)).collect();
            reactum_new.insert(rn, nodes.len());
            nodes.push((data.control.clone(), parent, ports));
            for &c in self.reactum.children(Place::Node(rn)).iter().rev() {
                stack.push(c);
            }
        }

        // Fill reactum sites with copies of the captured parameters. Copies
        // keep their original agent links, so duplicated parameters stay
        // connected to each other and to the context.
        for (reactum_site, &redex_site) in self.eta.as_slice().iter().enumerate() {
            let host = match self.reactum.sites()[reactum_site] {
                Place::Region(r) => anchor(occ.regions[r]),
                Place::Node(rn) => Place::Node(reactum_new[&rn]),
            };
            for &root in &occ.sites[&redex_site] {
                copy_subtree(agent, root, host, &mut nodes);
            }
        }

        // Final link numbering: agent links first (open links always
        // survive, closed ones only while pointed at), then fresh edges.
        let mut used: BTreeSet<Prov> = BTreeSet::new();
        for (_, _, ports) in &nodes {
            used.extend(ports.iter().copied());
        }
        let mut final_links: Vec<LinkData> = Vec::new();
        let mut link_index: BTreeMap<Prov, usize> = BTreeMap::new();
        for l in 0..agent.links().len() {
            let prov = Prov::Agent(l);
            if agent.link(l).is_open() || used.contains(&prov) {
                link_index.insert(prov, final_links.len());
                final_links.push(agent.link(l).clone());
            }
        }
        for &f in fresh.values() {
            let prov = Prov::Fresh(f);
            if used.contains(&prov) {
                link_index.insert(prov, final_links.len());
                final_links.push(LinkData::edge());
            }
        }

        let node_data: Vec<NodeData> = nodes
            .into_iter()
            .map(|(control, parent, ports)| NodeData {
                control,
                parent,
                ports: ports.iter().map(|p| link_index[p]).collect(),
            })
            .collect();
        let result = Bigraph::from_parts(node_data, agent.regions(), Vec::new(), final_links)
            .expect("rewriting a valid agent yields a valid agent");
        Ok(result)
    }

    /// Every rewrite of `agent` by this rule, one per occurrence.
    pub fn rewrites(&self, agent: &Bigraph) -> Result<Vec<Bigraph>, EngineError> {
        self.occurrences(agent)
            .iter()
            .map(|occ| self.apply(agent, occ))
            .collect()
    }
}

/// Deep-copy the subtree rooted at `root` onto `host`, preserving agent
/// link identities.
fn copy_subtree(
    agent: &Bigraph,
    root: NodeId,
    host: Place,
    nodes: &mut Vec<(Control, Place, Vec<Prov>)>,
) {
    let data = agent.node(root);
    let copy_id = nodes.len();
    nodes.push((
        data.control.clone(),
        host,
        data.ports.iter().map(|&l| Prov::Agent(l)).collect(),
    ));
    for &c in agent.children(Place::Node(root)) {
        copy_subtree(agent, c, Place::Node(copy_id), nodes);
    }
}
