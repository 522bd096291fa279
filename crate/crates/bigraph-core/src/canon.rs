//! Canonical forms for bigraphs.
//!
//! The canonical key is computed by iterated color refinement followed by
//! individualization-refinement search:
//!
//! 1. Nodes start colored by (control, parameter, arity, atomicity).
//! 2. Refinement re-colors each node by its current color, its parent (region
//!    index or parent color), the multiset of child colors and site indices,
//!    and a per-port signature of its links (outer name or edge, plus the
//!    colored point multiset of the link).
//! 3. If the partition is not discrete, the first non-singleton color class
//!    is individualized one node at a time and the search recurses; the
//!    lexicographically least serialization over all branches is the key.
//!
//! Region indices, site indices, and outer names are fixed by position/name,
//! never permuted. Two bigraphs get equal keys iff they differ only by a
//! renaming of node ids and edges.

use std::collections::BTreeMap;

use crate::bigraph::{Bigraph, LinkData, NodeData, NodeId, Place};

/// Canonical key: equal keys iff isomorphic (up to node/edge renaming).
pub fn canonical_key(g: &Bigraph) -> String {
    search(g).0
}

/// Canonical representative: same bigraph with nodes and links renumbered
/// into canonical order. Isomorphic inputs produce identical structures.
pub fn canonical_form(g: &Bigraph) -> Bigraph {
    let (_, order) = search(g);
    relabel(g, &order)
}

/// Isomorphism test via invariants plus canonical keys.
pub fn is_isomorphic(a: &Bigraph, b: &Bigraph) -> bool {
    if a.node_count() != b.node_count()
        || a.regions() != b.regions()
        || a.sites().len() != b.sites().len()
        || a.links().len() != b.links().len()
        || a.outer_names() != b.outer_names()
        || a.control_census() != b.control_census()
    {
        return false;
    }
    canonical_key(a) == canonical_key(b)
}

/// Run the individualization-refinement search; returns the least key and
/// the node order that produced it (canonical position -> node id).
fn search(g: &Bigraph) -> (String, Vec<NodeId>) {
    let colors = initial_colors(g);
    let mut best: Option<(String, Vec<NodeId>)> = None;
    search_rec(g, colors, &mut best);
    best.expect("search always yields at least one ordering")
}

fn search_rec(g: &Bigraph, mut colors: Vec<usize>, best: &mut Option<(String, Vec<NodeId>)>) {
    refine(g, &mut colors);
    match first_non_singleton(&colors) {
        None => {
            let order = order_from_colors(&colors);
            let key = serialize(g, &order);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                *best = Some((key, order));
            }
        }
        Some(class_color) => {
            for node in 0..colors.len() {
                if colors[node] == class_color {
                    let mut branched: Vec<usize> = colors.iter().map(|c| c * 2).collect();
                    branched[node] += 1;
                    search_rec(g, branched, best);
                }
            }
        }
    }
}

fn initial_colors(g: &Bigraph) -> Vec<usize> {
    let mut keys: Vec<(String, NodeId)> = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, n)| {
            (
                format!(
                    "{}\u{1}{:?}\u{1}{}\u{1}{}",
                    n.control.name, n.control.param, n.control.arity, n.control.atomic
                ),
                id,
            )
        })
        .collect();
    keys.sort();
    rank(keys, g.node_count())
}

/// One child entry in a node signature: sites sort before nodes.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ChildSig {
    Site(usize),
    Node(usize),
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ParentSig {
    Region(usize),
    Node(usize),
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct LinkSig {
    name: Option<String>,
    points: Vec<(usize, usize)>,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct NodeSig {
    color: usize,
    parent: ParentSig,
    children: Vec<ChildSig>,
    ports: Vec<LinkSig>,
}

fn refine(g: &Bigraph, colors: &mut Vec<usize>) {
    if g.node_count() == 0 {
        return;
    }
    loop {
        let before = distinct(colors);
        let mut sigs: Vec<(NodeSig, NodeId)> = (0..g.node_count())
            .map(|id| (node_sig(g, colors, id), id))
            .collect();
        sigs.sort();
        let next = rank(sigs, g.node_count());
        let after = distinct(&next);
        *colors = next;
        if after == before {
            return;
        }
    }
}

fn node_sig(g: &Bigraph, colors: &[usize], id: NodeId) -> NodeSig {
    let node = g.node(id);
    let parent = match node.parent {
        Place::Region(r) => ParentSig::Region(r),
        Place::Node(p) => ParentSig::Node(colors[p]),
    };
    let mut children: Vec<ChildSig> = g
        .sites_at(Place::Node(id))
        .iter()
        .map(|&s| ChildSig::Site(s))
        .chain(
            g.children(Place::Node(id))
                .iter()
                .map(|&c| ChildSig::Node(colors[c])),
        )
        .collect();
    children.sort_unstable();
    let ports = node
        .ports
        .iter()
        .map(|&l| {
            let mut points: Vec<(usize, usize)> =
                g.points(l).iter().map(|&(n, p)| (colors[n], p)).collect();
            points.sort_unstable();
            LinkSig {
                name: g.link(l).name.clone(),
                points,
            }
        })
        .collect();
    NodeSig {
        color: colors[id],
        parent,
        children,
        ports,
    }
}

/// Dense ranks from sorted (key, node) pairs.
fn rank<K: PartialEq>(sorted: Vec<(K, NodeId)>, n: usize) -> Vec<usize> {
    let mut colors = vec![0usize; n];
    let mut current = 0;
    for (i, (key, id)) in sorted.iter().enumerate() {
        if i > 0 && sorted[i - 1].0 != *key {
            current += 1;
        }
        colors[*id] = current;
    }
    colors
}

fn distinct(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// The least color value shared by more than one node, if any.
fn first_non_singleton(colors: &[usize]) -> Option<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colors {
        *counts.entry(c).or_insert(0) += 1;
    }
    counts.into_iter().find(|(_, n)| *n > 1).map(|(c, _)| c)
}

/// With a discrete coloring, canonical position = color.
fn order_from_colors(colors: &[usize]) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..colors.len()).collect();
    order.sort_unstable_by_key(|&id| colors[id]);
    order
}

/// Serialize under a total node order. Reads only order-invariant data, so
/// isomorphic bigraphs serialize identically under their canonical orders.
fn serialize(g: &Bigraph, order: &[NodeId]) -> String {
    use std::fmt::Write;
    let mut position = vec![0usize; g.node_count()];
    for (pos, &id) in order.iter().enumerate() {
        position[id] = pos;
    }

    let mut out = String::new();
    let idle_edges = (0..g.links().len())
        .filter(|&l| !g.link(l).is_open() && g.points(l).is_empty())
        .count();
    let _ = write!(
        &mut out,
        "R{};S{};N[{}];IE{}|",
        g.regions(),
        g.sites().len(),
        g.outer_names().join(","),
        idle_edges
    );
    let mut edge_numbers: BTreeMap<usize, usize> = BTreeMap::new();
    for r in 0..g.regions() {
        out.push('<');
        serialize_place(g, Place::Region(r), &position, &mut edge_numbers, &mut out);
        out.push('>');
    }
    out
}

fn serialize_place(
    g: &Bigraph,
    place: Place,
    position: &[usize],
    edge_numbers: &mut BTreeMap<usize, usize>,
    out: &mut String,
) {
    use std::fmt::Write;
    for &s in g.sites_at(place) {
        let _ = write!(out, "s{s};");
    }
    let mut kids: Vec<NodeId> = g.children(place).to_vec();
    kids.sort_unstable_by_key(|&id| position[id]);
    for id in kids {
        let node = g.node(id);
        let _ = write!(
            out,
            "{}\u{1}{:?}\u{1}{}\u{1}{}[",
            node.control.name, node.control.param, node.control.arity, node.control.atomic
        );
        for &l in &node.ports {
            match &g.link(l).name {
                Some(name) => {
                    let _ = write!(out, "n{name},");
                }
                None => {
                    let next = edge_numbers.len();
                    let e = *edge_numbers.entry(l).or_insert(next);
                    let _ = write!(out, "e{e},");
                }
            }
        }
        out.push_str("](");
        serialize_place(g, Place::Node(id), position, edge_numbers, out);
        out.push(')');
    }
}

/// Rebuild with nodes in canonical order and links renumbered by first use.
fn relabel(g: &Bigraph, order: &[NodeId]) -> Bigraph {
    let mut position = vec![0usize; g.node_count()];
    for (pos, &id) in order.iter().enumerate() {
        position[id] = pos;
    }

    // Link order: first use while walking nodes in canonical order, then idle
    // open links by name, then idle edges.
    let mut link_order: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.links().len()];
    let mut walk: Vec<NodeId> = Vec::new();
    for r in 0..g.regions() {
        collect_nodes(g, Place::Region(r), &position, &mut walk);
    }
    for &id in &walk {
        for &l in &g.node(id).ports {
            if !seen[l] {
                seen[l] = true;
                link_order.push(l);
            }
        }
    }
    let mut idle_open: Vec<usize> = (0..g.links().len())
        .filter(|&l| !seen[l] && g.link(l).is_open())
        .collect();
    idle_open.sort_by_key(|&l| g.link(l).name.clone());
    link_order.extend(idle_open.iter().copied());
    link_order.extend((0..g.links().len()).filter(|&l| !seen[l] && !g.link(l).is_open()));
    let mut link_position = vec![0usize; g.links().len()];
    for (pos, &l) in link_order.iter().enumerate() {
        link_position[l] = pos;
    }

    let remap_place = |p: Place| match p {
        Place::Region(r) => Place::Region(r),
        Place::Node(n) => Place::Node(position[n]),
    };
    let nodes: Vec<NodeData> = order
        .iter()
        .map(|&old| {
            let n = g.node(old);
            NodeData {
                control: n.control.clone(),
                parent: remap_place(n.parent),
                ports: n.ports.iter().map(|&l| link_position[l]).collect(),
            }
        })
        .collect();
    let sites: Vec<Place> = g.sites().iter().map(|&p| remap_place(p)).collect();
    let links: Vec<LinkData> = link_order.iter().map(|&l| g.link(l).clone()).collect();
    Bigraph::from_parts(nodes, g.regions(), sites, links).expect("relabeling preserves validity")
}

/// Nodes under `place` in canonical preorder.
fn collect_nodes(g: &Bigraph, place: Place, position: &[usize], out: &mut Vec<NodeId>) {
    let mut kids: Vec<NodeId> = g.children(place).to_vec();
    kids.sort_unstable_by_key(|&id| position[id]);
    for id in kids {
        out.push(id);
        collect_nodes(g, Place::Node(id), position, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::ControlTable;
    use crate::term::{build_bigraph, build_ground, node, site};

    fn table() -> ControlTable {
        let mut t = ControlTable::new();
        t.declare("A", 0, false).unwrap();
        t.declare("B", 0, false).unwrap();
        t.declare("K", 1, false).unwrap();
        t
    }

    #[test]
    fn sibling_order_does_not_matter() {
        let t = table();
        let g1 = build_ground(
            &t,
            &[vec![
                node("A", &[], vec![node("B", &[], vec![])]),
                node("B", &[], vec![]),
            ]],
        )
        .unwrap();
        let g2 = build_ground(
            &t,
            &[vec![
                node("B", &[], vec![]),
                node("A", &[], vec![node("B", &[], vec![])]),
            ]],
        )
        .unwrap();
        assert_eq!(canonical_key(&g1), canonical_key(&g2));
        assert!(is_isomorphic(&g1, &g2));
    }

    #[test]
    fn link_structure_distinguishes() {
        let t = table();
        // Two Ks joined on one edge vs two separate closed edges.
        let joined = build_ground(
            &t,
            &[vec![node("K", &["x"], vec![]), node("K", &["x"], vec![])]],
        )
        .unwrap();
        let split = build_ground(
            &t,
            &[vec![node("K", &["x"], vec![]), node("K", &["y"], vec![])]],
        )
        .unwrap();
        assert_ne!(canonical_key(&joined), canonical_key(&split));
        assert!(!is_isomorphic(&joined, &split));
    }

    #[test]
    fn outer_names_are_significant() {
        let t = table();
        let gx = build_bigraph(&t, &[vec![node("K", &["x"], vec![])]], &[]).unwrap();
        let gy = build_bigraph(&t, &[vec![node("K", &["y"], vec![])]], &[]).unwrap();
        let ge = build_ground(&t, &[vec![node("K", &["x"], vec![])]]).unwrap();
        assert_ne!(canonical_key(&gx), canonical_key(&gy));
        assert_ne!(canonical_key(&gx), canonical_key(&ge));
    }

    #[test]
    fn regions_are_not_interchangeable() {
        let t = table();
        let g1 = build_ground(
            &t,
            &[vec![node("A", &[], vec![])], vec![node("B", &[], vec![])]],
        )
        .unwrap();
        let g2 = build_ground(
            &t,
            &[vec![node("B", &[], vec![])], vec![node("A", &[], vec![])]],
        )
        .unwrap();
        assert_ne!(canonical_key(&g1), canonical_key(&g2));
    }

    #[test]
    fn site_positions_are_significant() {
        let t = table();
        let g1 = build_bigraph(
            &t,
            &[vec![node("A", &[], vec![site(0)]), node("B", &[], vec![])]],
            &[],
        )
        .unwrap();
        let g2 = build_bigraph(
            &t,
            &[vec![node("A", &[], vec![]), node("B", &[], vec![site(0)])]],
            &[],
        )
        .unwrap();
        assert_ne!(canonical_key(&g1), canonical_key(&g2));
    }

    #[test]
    fn canonical_form_is_idempotent_and_key_preserving() {
        let t = table();
        let g = build_ground(
            &t,
            &[vec![
                node(
                    "A",
                    &[],
                    vec![node("K", &["x"], vec![]), node("B", &[], vec![])],
                ),
                node("K", &["x"], vec![]),
            ]],
        )
        .unwrap();
        let c = canonical_form(&g);
        assert_eq!(canonical_key(&g), canonical_key(&c));
        assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn symmetric_bigraph_needs_individualization() {
        let t = table();
        // Four Ks pairwise joined: refinement alone cannot split them.
        let g1 = build_ground(
            &t,
            &[vec![
                node("K", &["x"], vec![]),
                node("K", &["x"], vec![]),
                node("K", &["y"], vec![]),
                node("K", &["y"], vec![]),
            ]],
        )
        .unwrap();
        let g2 = build_ground(
            &t,
            &[vec![
                node("K", &["x"], vec![]),
                node("K", &["y"], vec![]),
                node("K", &["x"], vec![]),
                node("K", &["y"], vec![]),
            ]],
        )
        .unwrap();
        assert_eq!(canonical_key(&g1), canonical_key(&g2));
        // Ring of two pairs vs one four-point link: different.
        let quad = build_ground(
            &t,
            &[vec![
                node("K", &["x"], vec![]),
                node("K", &["x"], vec![]),
                node("K", &["x"], vec![]),
                node("K", &["x"], vec![]),
            ]],
        )
        .unwrap();
        assert_ne!(canonical_key(&g1), canonical_key(&quad));
    }

    #[test]
    fn parameters_distinguish_controls() {
        use crate::term::{int_param, pnode};
        let mut t = ControlTable::new();
        t.declare("C", 0, true).unwrap();
        let g1 = build_ground(&t, &[vec![pnode("C", int_param(1), &[], vec![])]]).unwrap();
        let g2 = build_ground(&t, &[vec![pnode("C", int_param(2), &[], vec![])]]).unwrap();
        assert_ne!(canonical_key(&g1), canonical_key(&g2));
    }
}
