//! Pattern matching: find all occurrences of a (multi-region, open) pattern
//! inside a target bigraph.
//!
//! An occurrence maps pattern nodes injectively to target nodes with the same
//! control (name, parameter, arity, atomicity), preserving parent/child
//! structure and port order. Each pattern region is anchored at a context
//! place in the target: all top-level pattern nodes of region r map to
//! children of that place. Pattern sites absorb residual children: at a
//! matched node, target children not covered by the mapped pattern children
//! are absorbed by the lowest-indexed site (other sites at the same node
//! receive nothing); a node without sites must cover its target's children
//! exactly. Pattern links map to target links: a closed pattern link must
//! cover the target link's points exactly, an outer pattern name may map to
//! any link with room to spare.
//!
//! Anchor places must lie outside the matched material: the contents of the
//! regions (mapped nodes plus absorbed subtrees) are pairwise disjoint, and
//! no anchor is itself inside any content set. This makes rewriting sound:
//! everything outside the contents survives untouched.

use std::collections::{BTreeMap, BTreeSet};

use crate::bigraph::{Bigraph, LinkId, NodeId, Place};

/// One match of a pattern in a target.
///
/// Field order matters: `Ord` derives lexicographic comparison starting with
/// the node map, which gives a stable enumeration order for callers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    /// Pattern node -> target node (injective).
    pub nodes: BTreeMap<NodeId, NodeId>,
    /// Pattern region -> context place in the target.
    pub regions: Vec<Place>,
    /// Pattern site -> absorbed target subtree roots (empty for all but the
    /// lowest site at each matched node).
    pub sites: BTreeMap<usize, Vec<NodeId>>,
    /// Pattern link -> target link.
    pub links: BTreeMap<LinkId, LinkId>,
}

impl Occurrence {
    /// All target nodes consumed by this occurrence: mapped nodes plus the
    /// full subtrees of absorbed site parameters.
    pub fn contents(&self, target: &Bigraph) -> BTreeSet<NodeId> {
        let mut all: BTreeSet<NodeId> = self.nodes.values().copied().collect();
        for roots in self.sites.values() {
            for &root in roots {
                all.extend(target.subtree(root));
            }
        }
        all
    }
}

/// Enumerate all occurrences of `pattern` in `target`, deduplicated and in
/// ascending `Ord` order. A pattern with an empty region never matches.
pub fn matches(pattern: &Bigraph, target: &Bigraph) -> Vec<Occurrence> {
    for r in 0..pattern.regions() {
        if pattern.children(Place::Region(r)).is_empty() {
            return Vec::new();
        }
    }
    let mut m = Matcher::new(pattern, target);
    m.assign(0);
    let mut out: Vec<Occurrence> = m.found.into_iter().collect();
    out.sort();
    out
}

/// Does `pattern` occur in `target` at all?
pub fn occurs(pattern: &Bigraph, target: &Bigraph) -> bool {
    !matches(pattern, target).is_empty()
}

struct Matcher<'a> {
    pattern: &'a Bigraph,
    target: &'a Bigraph,
    /// Pattern nodes in parents-before-children order.
    order: Vec<NodeId>,
    /// node_map[p] = Some(t) once pattern node p is assigned.
    node_map: Vec<Option<NodeId>>,
    /// Target nodes already used (injectivity).
    used: Vec<bool>,
    /// Pattern link -> target link, with use counts for backtracking.
    link_map: BTreeMap<LinkId, LinkId>,
    link_uses: BTreeMap<LinkId, usize>,
    found: BTreeSet<Occurrence>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Bigraph, target: &'a Bigraph) -> Self {
        // Parents-before-children, grouped by region, so a node's parent is
        // always assigned before the node itself.
        let mut order = Vec::with_capacity(pattern.node_count());
        for r in 0..pattern.regions() {
            preorder(pattern, Place::Region(r), &mut order);
        }
        Matcher {
            pattern,
            target,
            order,
            node_map: vec![None; pattern.node_count()],
            used: vec![false; target.node_count()],
            link_map: BTreeMap::new(),
            link_uses: BTreeMap::new(),
            found: BTreeSet::new(),
        }
    }

    fn assign(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.finalize();
            return;
        }
        let p = self.order[depth];
        let pnode = self.pattern.node(p);
        let candidates: Vec<NodeId> = match pnode.parent {
            // Top-level pattern node: parent place is free, so try every
            // target node with the right control. The region anchor is
            // derived in finalize() from wherever this node landed.
            Place::Region(_) => (0..self.target.node_count()).collect(),
            // Child pattern node: must land under its parent's image.
            Place::Node(pp) => {
                let tp = self.node_map[pp].expect("parent assigned first");
                self.target.children(Place::Node(tp)).to_vec()
            }
        };
        for t in candidates {
            if self.used[t] || !self.compatible(p, t) {
                continue;
            }
            // Top nodes of the same pattern region must share a parent, and
            // distinct regions must not collide on the same anchor in ways
            // that overlap; full disjointness is checked in finalize().
            if let Place::Region(r) = pnode.parent {
                if let Some(anchor) = self.region_anchor(r, p) {
                    if self.target.node(t).parent != anchor {
                        continue;
                    }
                }
            }
            if !self.try_links(p, t) {
                continue;
            }
            self.node_map[p] = Some(t);
            self.used[t] = true;
            self.assign(depth + 1);
            self.used[t] = false;
            self.node_map[p] = None;
            self.untry_links(p);
        }
    }

    /// Control equality (name, param, arity, atomicity all agree).
    fn compatible(&self, p: NodeId, t: NodeId) -> bool {
        self.pattern.node(p).control == self.target.node(t).control
    }

    /// Anchor already pinned for pattern region `r` by an earlier top node
    /// (excluding `p` itself).
    fn region_anchor(&self, r: usize, p: NodeId) -> Option<Place> {
        for &top in self.pattern.children(Place::Region(r)) {
            if top != p {
                if let Some(t) = self.node_map[top] {
                    return Some(self.target.node(t).parent);
                }
            }
        }
        None
    }

    /// Extend the link map for every port of p -> t; undo with untry_links.
    /// Port i of the pattern node must share a link with port i of the
    /// target node, consistently with previous bindings.
    fn try_links(&mut self, p: NodeId, t: NodeId) -> bool {
        let pports = &self.pattern.node(p).ports;
        let tports = &self.target.node(t).ports;
        debug_assert_eq!(pports.len(), tports.len());
        let mut bound = Vec::new();
        for (&pl, &tl) in pports.iter().zip(tports.iter()) {
            match self.link_map.get(&pl) {
                Some(&existing) if existing != tl => {
                    for b in bound {
                        self.unbind(b);
                    }
                    return false;
                }
                Some(_) => {
                    *self.link_uses.get_mut(&pl).expect("bound link has uses") += 1;
                    bound.push(pl);
                }
                None => {
                    self.link_map.insert(pl, tl);
                    self.link_uses.insert(pl, 1);
                    bound.push(pl);
                }
            }
        }
        true
    }

    fn untry_links(&mut self, p: NodeId) {
        let pports = self.pattern.node(p).ports.clone();
        for pl in pports {
            self.unbind(pl);
        }
    }

    fn unbind(&mut self, pl: LinkId) {
        let uses = self.link_uses.get_mut(&pl).expect("unbinding a bound link");
        *uses -= 1;
        if *uses == 0 {
            self.link_uses.remove(&pl);
            self.link_map.remove(&pl);
        }
    }

    /// All pattern nodes assigned: derive anchors and absorption, then check
    /// the global side conditions.
    fn finalize(&mut self) {
        // Region anchors: parent of the first top node's image.
        let mut regions = Vec::with_capacity(self.pattern.regions());
        for r in 0..self.pattern.regions() {
            let tops = self.pattern.children(Place::Region(r));
            let first = self.node_map[tops[0]].expect("all assigned");
            regions.push(self.target.node(first).parent);
        }

        // Site absorption. At each matched pattern node with sites, residual
        // target children (not images of pattern children) go to the lowest
        // site; a siteless pattern node must have no residuals.
        let mut sites: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
        for s in 0..self.pattern.sites().len() {
            sites.insert(s, Vec::new());
        }
        for (p, t) in self.node_map.iter().enumerate() {
            let t = t.expect("all assigned");
            let covered: BTreeSet<NodeId> = self
                .pattern
                .children(Place::Node(p))
                .iter()
                .map(|&c| self.node_map[c].expect("all assigned"))
                .collect();
            let residual: Vec<NodeId> = self
                .target
                .children(Place::Node(t))
                .iter()
                .copied()
                .filter(|c| !covered.contains(c))
                .collect();
            let psites = self.pattern.sites_at(Place::Node(p));
            if psites.is_empty() {
                if !residual.is_empty() {
                    return;
                }
            } else if !residual.is_empty() {
                let lowest = *psites.iter().min().expect("nonempty");
                sites.insert(lowest, residual);
            }
        }

        // Contents (mapped nodes plus absorbed subtrees) must not overlap:
        // no node may be both mapped and absorbed, or absorbed twice. The
        // anchors must lie outside the contents as well.
        let mut all_contents: BTreeSet<NodeId> = self
            .node_map
            .iter()
            .map(|t| t.expect("all assigned"))
            .collect();
        for roots in sites.values() {
            for &root in roots {
                for n in self.target.subtree(root) {
                    if !all_contents.insert(n) {
                        return;
                    }
                }
            }
        }
        for anchor in &regions {
            if let Place::Node(n) = anchor {
                if all_contents.contains(n) {
                    return;
                }
            }
        }

        // A closed pattern link stands for an edge of the match itself, so
        // it must map to a closed target link and cover its points exactly.
        // Open pattern names may map to any link with any extra points.
        for (&pl, &tl) in &self.link_map {
            if self.pattern.link(pl).is_open() {
                continue;
            }
            if self.target.link(tl).is_open() {
                return;
            }
            let image: BTreeSet<(NodeId, usize)> = self
                .pattern
                .points(pl)
                .iter()
                .map(|&(n, port)| (self.node_map[n].expect("all assigned"), port))
                .collect();
            let actual: BTreeSet<(NodeId, usize)> =
                self.target.points(tl).iter().copied().collect();
            if image != actual {
                return;
            }
        }

        let nodes: BTreeMap<NodeId, NodeId> = self
            .node_map
            .iter()
            .enumerate()
            .map(|(p, t)| (p, t.expect("all assigned")))
            .collect();
        self.found.insert(Occurrence {
            nodes,
            regions,
            sites,
            links: self.link_map.clone(),
        });
    }
}

fn preorder(g: &Bigraph, place: Place, out: &mut Vec<NodeId>) {
    for &c in g.children(place) {
        out.push(c);
        preorder(g, Place::Node(c), out);
    }
}
