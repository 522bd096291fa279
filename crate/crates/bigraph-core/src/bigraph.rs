use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::control::Control;
use crate::error::BuildError;

pub type NodeId = usize;
pub type LinkId = usize;

/// A place in the place forest: either one of the bigraph's regions or a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Region(usize),
    Node(NodeId),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Region(r) => write!(f, "region {r}"),
            Place::Node(n) => write!(f, "node {n}"),
        }
    }
}

/// A node: control instance, parent place, and one link per port.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeData {
    pub control: Control,
    pub parent: Place,
    pub ports: Vec<LinkId>,
}

/// A link: an edge when `name` is `None`, an open link bound to the outer
/// name otherwise. Its points are the ports that reference it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkData {
    pub name: Option<String>,
}

impl LinkData {
    pub fn edge() -> Self {
        LinkData { name: None }
    }

    pub fn open(name: &str) -> Self {
        LinkData {
            name: Some(name.to_string()),
        }
    }

    pub fn is_open(&self) -> bool {
        self.name.is_some()
    }
}

/// A (point on a link): port `port` of node `node`.
pub type Point = (NodeId, usize);

/// A bigraph: a forest of nodes under `regions` roots, `sites` holes placed in
/// the forest, and a link hypergraph connecting node ports.
///
/// Invariants established by [`Bigraph::from_parts`]:
/// * the parent relation is acyclic and every parent reference exists,
/// * atomic nodes have no children and no sites,
/// * every node has exactly `control.arity` ports, each referencing a link,
/// * outer names are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    nodes: Vec<NodeData>,
    regions: usize,
    sites: Vec<Place>,
    links: Vec<LinkData>,
    // Derived adjacency, rebuilt on construction.
    region_children: Vec<Vec<NodeId>>,
    node_children: Vec<Vec<NodeId>>,
    region_sites: Vec<Vec<usize>>,
    node_sites: Vec<Vec<usize>>,
    link_points: Vec<Vec<Point>>,
}

impl Bigraph {
    /// The empty bigraph with a given number of regions.
    pub fn empty(regions: usize) -> Self {
        Bigraph::from_parts(Vec::new(), regions, Vec::new(), Vec::new())
            .expect("empty bigraph is always valid")
    }

    /// Assemble and validate a bigraph from raw parts.
    pub fn from_parts(
        nodes: Vec<NodeData>,
        regions: usize,
        sites: Vec<Place>,
        links: Vec<LinkData>,
    ) -> Result<Self, BuildError> {
        let n = nodes.len();
        let check_place = |p: Place| -> Result<(), BuildError> {
            match p {
                Place::Region(r) if r < regions => Ok(()),
                Place::Node(id) if id < n => Ok(()),
                other => Err(BuildError::InvalidParent {
                    reference: other.to_string(),
                    regions,
                    nodes: n,
                }),
            }
        };

        for node in &nodes {
            check_place(node.parent)?;
        }
        for site in &sites {
            check_place(*site)?;
        }

        // Parent chains must terminate in a region.
        for start in 0..n {
            let mut seen = BTreeSet::new();
            let mut cur = start;
            loop {
                if !seen.insert(cur) {
                    return Err(BuildError::PlaceCycle(start));
                }
                match nodes[cur].parent {
                    Place::Region(_) => break,
                    Place::Node(next) => cur = next,
                }
            }
        }

        for (id, node) in nodes.iter().enumerate() {
            if node.ports.len() != node.control.arity {
                return Err(BuildError::ArityMismatch {
                    control: node.control.name.clone(),
                    node: id,
                    expected: node.control.arity,
                    actual: node.ports.len(),
                });
            }
            for (port, link) in node.ports.iter().enumerate() {
                if *link >= links.len() {
                    return Err(BuildError::InvalidLink {
                        node: id,
                        port,
                        link: *link,
                    });
                }
            }
        }

        let mut names = BTreeSet::new();
        for link in &links {
            if let Some(name) = &link.name {
                if !names.insert(name.clone()) {
                    return Err(BuildError::DuplicateName(name.clone()));
                }
            }
        }

        let mut graph = Bigraph {
            region_children: vec![Vec::new(); regions],
            node_children: vec![Vec::new(); n],
            region_sites: vec![Vec::new(); regions],
            node_sites: vec![Vec::new(); n],
            link_points: vec![Vec::new(); links.len()],
            nodes,
            regions,
            sites,
            links,
        };
        for (id, node) in graph.nodes.iter().enumerate() {
            match node.parent {
                Place::Region(r) => graph.region_children[r].push(id),
                Place::Node(p) => graph.node_children[p].push(id),
            }
        }
        for (s, place) in graph.sites.iter().enumerate() {
            match place {
                Place::Region(r) => graph.region_sites[*r].push(s),
                Place::Node(p) => graph.node_sites[*p].push(s),
            }
        }
        for (id, node) in graph.nodes.iter().enumerate() {
            for (port, link) in node.ports.iter().enumerate() {
                graph.link_points[*link].push((id, port));
            }
        }

        // Atomicity: no children and no sites under an atomic node.
        for id in 0..n {
            if graph.nodes[id].control.atomic
                && (!graph.node_children[id].is_empty() || !graph.node_sites[id].is_empty())
            {
                return Err(BuildError::AtomicWithChildren {
                    control: graph.nodes[id].control.name.clone(),
                    node: id,
                });
            }
        }

        Ok(graph)
    }

    pub fn nodes(&self) -> &[NodeData] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &NodeData {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn regions(&self) -> usize {
        self.regions
    }

    /// Parents of the sites, indexed by site number.
    pub fn sites(&self) -> &[Place] {
        &self.sites
    }

    pub fn links(&self) -> &[LinkData] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> &LinkData {
        &self.links[id]
    }

    /// Child nodes of a place, in node-id order.
    pub fn children(&self, place: Place) -> &[NodeId] {
        match place {
            Place::Region(r) => &self.region_children[r],
            Place::Node(n) => &self.node_children[n],
        }
    }

    /// Sites whose parent is the given place, in site-index order.
    pub fn sites_at(&self, place: Place) -> &[usize] {
        match place {
            Place::Region(r) => &self.region_sites[r],
            Place::Node(n) => &self.node_sites[n],
        }
    }

    /// All points (node, port) of a link.
    pub fn points(&self, link: LinkId) -> &[Point] {
        &self.link_points[link]
    }

    /// Find the link bound to an outer name.
    pub fn link_by_name(&self, name: &str) -> Option<LinkId> {
        self.links
            .iter()
            .position(|l| l.name.as_deref() == Some(name))
    }

    /// Outer names, sorted.
    pub fn outer_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self
            .links
            .iter()
            .filter_map(|l| l.name.as_deref())
            .collect();
        names.sort_unstable();
        names
    }

    /// Whether the bigraph is ground: no sites and no open links.
    pub fn is_ground(&self) -> bool {
        self.sites.is_empty() && self.links.iter().all(|l| !l.is_open())
    }

    /// The node ids of `root` and all its descendants.
    pub fn subtree(&self, root: NodeId) -> Vec<NodeId> {
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.node_children[out[i]]);
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Multiset of control names, for cheap isomorphism pre-checks.
    pub fn control_census(&self) -> BTreeMap<&Control, usize> {
        let mut census = BTreeMap::new();
        for node in &self.nodes {
            *census.entry(&node.control).or_insert(0) += 1;
        }
        census
    }

    /// Render as a nested term, for diagnostics. Children are printed in
    /// node-id order, edges numbered by first use.
    pub fn display_term(&self) -> String {
        let mut edge_names: BTreeMap<LinkId, usize> = BTreeMap::new();
        let mut out = String::new();
        for r in 0..self.regions {
            if r > 0 {
                out.push_str(" || ");
            }
            self.fmt_place(Place::Region(r), &mut edge_names, &mut out);
        }
        if self.regions == 0 {
            out.push_str("<empty>");
        }
        out
    }

    fn fmt_place(&self, place: Place, edge_names: &mut BTreeMap<LinkId, usize>, out: &mut String) {
        use fmt::Write;
        let mut parts: Vec<String> = Vec::new();
        for &s in self.sites_at(place) {
            parts.push(format!("id({s})"));
        }
        for &child in self.children(place) {
            let node = &self.nodes[child];
            let mut s = node.control.to_string();
            if !node.ports.is_empty() {
                let labels: Vec<String> = node
                    .ports
                    .iter()
                    .map(|&l| match &self.links[l].name {
                        Some(n) => n.clone(),
                        None => {
                            let next = edge_names.len();
                            let id = *edge_names.entry(l).or_insert(next);
                            format!("e{id}")
                        }
                    })
                    .collect();
                let _ = write!(s, "{{{}}}", labels.join(","));
            }
            let mut inner = String::new();
            self.fmt_place(Place::Node(child), edge_names, &mut inner);
            if !inner.is_empty() {
                let _ = write!(s, ".({inner})");
            }
            parts.push(s);
        }
        if parts.is_empty() {
            if let Place::Region(_) = place {
                out.push('1');
            }
        } else {
            out.push_str(&parts.join(" | "));
        }
    }
}
