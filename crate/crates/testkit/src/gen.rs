//! Seeded random generation of bigraphs, patterns, models, and formulas.
//!
//! Everything takes an explicit RNG so test failures reproduce from a seed.

use bigraph_core::{Bigraph, ControlTable, LinkData, NodeData, Place};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// The standard deterministic RNG for tests.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small signature for random structures: controls X0..X4 with arities
/// 0..=2, two of them atomic.
pub fn test_table() -> ControlTable {
    let mut t = ControlTable::new();
    t.declare("X0", 0, false).unwrap();
    t.declare("X1", 1, false).unwrap();
    t.declare("X2", 2, false).unwrap();
    t.declare("X3", 0, true).unwrap();
    t.declare("X4", 1, true).unwrap();
    t
}

const CONTROLS: [(&str, usize, bool); 5] = [
    ("X0", 0, false),
    ("X1", 1, false),
    ("X2", 2, false),
    ("X3", 0, true),
    ("X4", 1, true),
];

/// Random ground bigraph: up to `max_nodes` nodes in 1–2 regions, ports
/// wired into shared edges or open links.
pub fn random_ground(rng: &mut ChaCha8Rng, max_nodes: usize) -> Bigraph {
    random_structure(rng, max_nodes, false)
}

/// Random pattern: like [`random_ground`] but may add sites under
/// non-atomic nodes and leaves some links open.
pub fn random_pattern(rng: &mut ChaCha8Rng, max_nodes: usize) -> Bigraph {
    random_structure(rng, max_nodes, true)
}

fn random_structure(rng: &mut ChaCha8Rng, max_nodes: usize, pattern: bool) -> Bigraph {
    let table = test_table();
    let regions = if rng.gen_bool(0.7) { 1 } else { 2 };
    let n = rng.gen_range(1..=max_nodes.max(1));

    // Choose controls; remember which nodes may carry children.
    let mut kinds = Vec::with_capacity(n);
    for _ in 0..n {
        kinds.push(CONTROLS[rng.gen_range(0..CONTROLS.len())]);
    }

    // Parents: regions or earlier non-atomic nodes.
    let mut parents = Vec::with_capacity(n);
    for i in 0..n {
        let mut choices: Vec<Place> = (0..regions).map(Place::Region).collect();
        for (j, kind) in kinds.iter().enumerate().take(i) {
            if !kind.2 {
                choices.push(Place::Node(j));
            }
        }
        parents.push(*choices.choose(rng).expect("regions always available"));
    }

    // Link pool: total ports wired into 1..=ports links.
    let total_ports: usize = kinds.iter().map(|k| k.1).sum();
    let link_count = if total_ports == 0 {
        0
    } else {
        rng.gen_range(1..=total_ports)
    };
    let mut ports_per_node: Vec<Vec<usize>> = Vec::with_capacity(n);
    for kind in &kinds {
        let ports = (0..kind.1).map(|_| rng.gen_range(0..link_count)).collect();
        ports_per_node.push(ports);
    }

    // Links with at least one point are kept; remap to dense ids.
    let mut used = vec![false; link_count];
    for ports in &ports_per_node {
        for &l in ports {
            used[l] = true;
        }
    }
    let mut dense = vec![usize::MAX; link_count];
    let mut links = Vec::new();
    for (l, &u) in used.iter().enumerate() {
        if u {
            dense[l] = links.len();
            let open = if pattern {
                rng.gen_bool(0.5)
            } else {
                rng.gen_bool(0.25)
            };
            if open {
                links.push(LinkData::open(&format!("x{}", links.len())));
            } else {
                links.push(LinkData::edge());
            }
        }
    }

    let nodes: Vec<NodeData> = (0..n)
        .map(|i| NodeData {
            control: table.instantiate(kinds[i].0, None).expect("known control"),
            parent: parents[i],
            ports: ports_per_node[i].iter().map(|&l| dense[l]).collect(),
        })
        .collect();

    // Sites: patterns may get up to 2, placed under non-atomic nodes (or
    // regions, for generic structures that are not rule redexes).
    let mut sites = Vec::new();
    if pattern {
        let site_count = rng.gen_range(0..=2);
        for _ in 0..site_count {
            let mut choices: Vec<Place> =
                (0..n).filter(|&i| !kinds[i].2).map(Place::Node).collect();
            if choices.is_empty() {
                choices = (0..regions).map(Place::Region).collect();
            }
            sites.push(*choices.choose(rng).expect("nonempty"));
        }
    }

    Bigraph::from_parts(nodes, regions, sites, links).expect("generated structure is valid")
}

/// Relabel nodes and links by random permutations: the result is isomorphic
/// to the input by construction.
pub fn random_relabel(rng: &mut ChaCha8Rng, g: &Bigraph) -> Bigraph {
    let n = g.node_count();
    let mut node_perm: Vec<usize> = (0..n).collect();
    node_perm.shuffle(rng);
    let l = g.links().len();
    let mut link_perm: Vec<usize> = (0..l).collect();
    link_perm.shuffle(rng);

    let remap = |p: Place| match p {
        Place::Region(r) => Place::Region(r),
        Place::Node(i) => Place::Node(node_perm[i]),
    };
    let mut nodes = vec![None; n];
    for i in 0..n {
        let d = g.node(i);
        nodes[node_perm[i]] = Some(NodeData {
            control: d.control.clone(),
            parent: remap(d.parent),
            ports: d.ports.iter().map(|&x| link_perm[x]).collect(),
        });
    }
    let mut links = vec![LinkData::edge(); l];
    for x in 0..l {
        links[link_perm[x]] = g.link(x).clone();
    }
    let sites = g.sites().iter().map(|&p| remap(p)).collect();
    Bigraph::from_parts(
        nodes
            .into_iter()
            .map(|n| n.expect("permutation covers all"))
            .collect(),
        g.regions(),
        sites,
        links,
    )
    .expect("relabeling preserves validity")
}

/// Mutate `g` so the result is certainly not isomorphic to it, and return
/// the mutated bigraph. The mutation changes a cheap isomorphism invariant
/// (control census or node count), which certifies non-isomorphism.
pub fn certified_non_isomorphic(rng: &mut ChaCha8Rng, g: &Bigraph) -> Bigraph {
    let table = test_table();
    if g.node_count() > 0 && rng.gen_bool(0.5) {
        // Change one node's control family to a different same-arity family
        // where possible, else to any family (adjusting ports).
        let victim = rng.gen_range(0..g.node_count());
        let old = &g.node(victim).control;
        let (name, arity, _atomic) = *CONTROLS
            .iter()
            .filter(|(n, _, _)| *n != old.name)
            .filter(|(_, _, atomic)| {
                // Keep place validity: a node with children/sites must stay
                // non-atomic.
                !(*atomic
                    && (!g.children(Place::Node(victim)).is_empty()
                        || !g.sites_at(Place::Node(victim)).is_empty()))
            })
            .choose(rng)
            .expect("another control family always exists");
        let mut nodes: Vec<NodeData> = g.nodes().to_vec();
        let mut links = g.links().to_vec();
        let mut ports: Vec<usize> = nodes[victim].ports.clone();
        while ports.len() > arity {
            ports.pop();
        }
        while ports.len() < arity {
            // New ports go to fresh edges to avoid disturbing other links.
            links.push(LinkData::edge());
            ports.push(links.len() - 1);
        }
        nodes[victim] = NodeData {
            control: table.instantiate(name, None).expect("known control"),
            parent: nodes[victim].parent,
            ports,
        };
        prune_idle_edges(&mut nodes, &mut links);
        Bigraph::from_parts(nodes, g.regions(), g.sites().to_vec(), links)
            .expect("mutation preserves validity")
    } else {
        // Add one node: node count differs.
        let mut nodes: Vec<NodeData> = g.nodes().to_vec();
        let links = g.links().to_vec();
        nodes.push(NodeData {
            control: table.instantiate("X3", None).expect("known control"),
            parent: Place::Region(rng.gen_range(0..g.regions().max(1))),
            ports: Vec::new(),
        });
        Bigraph::from_parts(nodes, g.regions().max(1), g.sites().to_vec(), links)
            .expect("mutation preserves validity")
    }
}

/// Drop closed links that lost all their points, compacting ids.
fn prune_idle_edges(nodes: &mut [NodeData], links: &mut Vec<LinkData>) {
    let mut used = vec![false; links.len()];
    for n in nodes.iter() {
        for &l in &n.ports {
            used[l] = true;
        }
    }
    let mut dense = vec![usize::MAX; links.len()];
    let mut kept = Vec::new();
    for (l, link) in links.iter().enumerate() {
        if used[l] || link.is_open() {
            dense[l] = kept.len();
            kept.push(link.clone());
        }
    }
    for n in nodes.iter_mut() {
        for l in n.ports.iter_mut() {
            *l = dense[*l];
        }
    }
    *links = kept;
}

/// Extract a pattern that occurs in `target` by copying a few subtrees and
/// punching sites, so matcher tests exercise hits, not just misses.
pub fn planted_pattern(rng: &mut ChaCha8Rng, target: &Bigraph) -> Option<Bigraph> {
    if target.node_count() == 0 {
        return None;
    }
    // Pick an anchor: a region or a non-atomic node.
    let mut anchors: Vec<Place> = (0..target.regions()).map(Place::Region).collect();
    for i in 0..target.node_count() {
        if !target.node(i).control.atomic && !target.children(Place::Node(i)).is_empty() {
            anchors.push(Place::Node(i));
        }
    }
    let anchor = *anchors.choose(rng)?;
    let tops = target.children(anchor);
    if tops.is_empty() {
        return None;
    }
    // Copy 1..=2 top subtrees.
    let take = rng.gen_range(1..=tops.len().min(2));
    let mut chosen: Vec<usize> = tops.to_vec();
    chosen.shuffle(rng);
    chosen.truncate(take);
    chosen.sort_unstable();

    let mut nodes: Vec<NodeData> = Vec::new();
    let mut node_map: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut sites: Vec<Place> = Vec::new();
    for &top in &chosen {
        copy_into(
            rng,
            target,
            top,
            Place::Region(0),
            &mut nodes,
            &mut node_map,
            &mut sites,
        );
    }

    // Links: keep the target's sharing among copied ports. A link becomes
    // closed only if all its points were copied (exactness can hold);
    // otherwise it must stay open.
    let mut link_map: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut links: Vec<LinkData> = Vec::new();
    for (&old, &new) in &node_map {
        let ports = target.node(old).ports.clone();
        let mut mapped = Vec::with_capacity(ports.len());
        for tl in ports {
            let id = *link_map.entry(tl).or_insert_with(|| {
                let all_copied = target
                    .points(tl)
                    .iter()
                    .all(|(n, _)| node_map.contains_key(n));
                let closed_target = !target.link(tl).is_open();
                let next = links.len();
                if all_copied && closed_target && rng.gen_bool(0.5) {
                    links.push(LinkData::edge());
                } else {
                    links.push(LinkData::open(&format!("x{next}")));
                }
                next
            });
            mapped.push(id);
        }
        nodes[new].ports = mapped;
    }

    Some(
        Bigraph::from_parts(nodes, 1, sites, links).expect("planted pattern is structurally valid"),
    )
}

fn copy_into(
    rng: &mut ChaCha8Rng,
    target: &Bigraph,
    old: usize,
    parent: Place,
    nodes: &mut Vec<NodeData>,
    node_map: &mut std::collections::BTreeMap<usize, usize>,
    sites: &mut Vec<Place>,
) {
    let new = nodes.len();
    node_map.insert(old, new);
    nodes.push(NodeData {
        control: target.node(old).control.clone(),
        parent,
        ports: Vec::new(), // wired afterwards
    });
    let children = target.children(Place::Node(old));
    if !children.is_empty() && rng.gen_bool(0.4) {
        // Replace the whole child list with a site: residuals absorbed.
        sites.push(Place::Node(new));
        return;
    }
    for &c in children {
        copy_into(rng, target, c, Place::Node(new), nodes, node_map, sites);
    }
}
