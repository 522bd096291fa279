//! Brute-force oracles for matching and isomorphism.
//!
//! These enumerate candidate maps exhaustively with no search-order tricks,
//! as an independent reference implementation for small inputs (≤ 8 nodes or
//! so; factorial blowup beyond that).

use std::collections::{BTreeMap, BTreeSet};

use bigraph_core::{Bigraph, NodeId, Occurrence, Place};

/// All occurrences of `pattern` in `target`, by exhaustive enumeration of
/// injective node maps followed by condition checks.
pub fn oracle_matches(pattern: &Bigraph, target: &Bigraph) -> Vec<Occurrence> {
    for r in 0..pattern.regions() {
        if pattern.children(Place::Region(r)).is_empty() {
            return Vec::new();
        }
    }
    let pn = pattern.node_count();
    let tn = target.node_count();
    if pn > tn {
        return Vec::new();
    }
    let mut found: BTreeSet<Occurrence> = BTreeSet::new();
    let mut map = vec![usize::MAX; pn];
    let mut used = vec![false; tn];
    enumerate(0, &mut map, &mut used, &mut |map| {
        if let Some(occ) = validate(pattern, target, map) {
            found.insert(occ);
        }
    });
    found.into_iter().collect()
}

fn enumerate(
    p: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    sink: &mut impl FnMut(&[usize]),
) {
    if p == map.len() {
        sink(map);
        return;
    }
    for t in 0..used.len() {
        if !used[t] {
            map[p] = t;
            used[t] = true;
            enumerate(p + 1, map, used, sink);
            used[t] = false;
            map[p] = usize::MAX;
        }
    }
}

/// Check every occurrence condition on a total injective node map; build
/// the occurrence if they all hold.
fn validate(pattern: &Bigraph, target: &Bigraph, map: &[usize]) -> Option<Occurrence> {
    // Controls agree.
    for (p, &t) in map.iter().enumerate() {
        if pattern.node(p).control != target.node(t).control {
            return None;
        }
    }

    // Parent structure: child nodes map under their parent's image; all top
    // nodes of one pattern region share a target parent (the anchor).
    let mut regions: Vec<Option<Place>> = vec![None; pattern.regions()];
    for (p, &t) in map.iter().enumerate() {
        match pattern.node(p).parent {
            Place::Node(pp) => {
                if target.node(t).parent != Place::Node(map[pp]) {
                    return None;
                }
            }
            Place::Region(r) => {
                let anchor = target.node(t).parent;
                match regions[r] {
                    None => regions[r] = Some(anchor),
                    Some(prev) if prev != anchor => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let regions: Vec<Place> = regions
        .into_iter()
        .map(|a| a.expect("every region inhabited"))
        .collect();

    // Port-wise link map consistency.
    let mut links: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, &t) in map.iter().enumerate() {
        let pp = &pattern.node(p).ports;
        let tp = &target.node(t).ports;
        if pp.len() != tp.len() {
            return None;
        }
        for (&pl, &tl) in pp.iter().zip(tp.iter()) {
            match links.get(&pl) {
                None => {
                    links.insert(pl, tl);
                }
                Some(&prev) if prev != tl => return None,
                Some(_) => {}
            }
        }
    }

    // Closed pattern links map to closed target links, covering exactly.
    for (&pl, &tl) in &links {
        if pattern.link(pl).is_open() {
            continue;
        }
        if target.link(tl).is_open() {
            return None;
        }
        let image: BTreeSet<(NodeId, usize)> = pattern
            .points(pl)
            .iter()
            .map(|&(n, port)| (map[n], port))
            .collect();
        let actual: BTreeSet<(NodeId, usize)> = target.points(tl).iter().copied().collect();
        if image != actual {
            return None;
        }
    }

    // Residual children and site absorption.
    let mut sites: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for s in 0..pattern.sites().len() {
        sites.insert(s, Vec::new());
    }
    for (p, &t) in map.iter().enumerate() {
        let covered: BTreeSet<NodeId> = pattern
            .children(Place::Node(p))
            .iter()
            .map(|&c| map[c])
            .collect();
        let residual: Vec<NodeId> = target
            .children(Place::Node(t))
            .iter()
            .copied()
            .filter(|c| !covered.contains(c))
            .collect();
        let psites = pattern.sites_at(Place::Node(p));
        if psites.is_empty() {
            if !residual.is_empty() {
                return None;
            }
        } else if !residual.is_empty() {
            let lowest = *psites.iter().min().expect("nonempty");
            sites.insert(lowest, residual);
        }
    }

    // Contents disjoint; anchors outside.
    let mut contents: BTreeSet<NodeId> = BTreeSet::new();
    for &t in map.iter() {
        if !contents.insert(t) {
            return None;
        }
    }
    for roots in sites.values() {
        for &root in roots {
            for n in target.subtree(root) {
                if !contents.insert(n) {
                    return None;
                }
            }
        }
    }
    for anchor in &regions {
        if let Place::Node(n) = anchor {
            if contents.contains(n) {
                return None;
            }
        }
    }

    Some(Occurrence {
        nodes: map.iter().enumerate().map(|(p, &t)| (p, t)).collect(),
        regions,
        sites,
        links,
    })
}

/// Exhaustive isomorphism test: search all structure-preserving node
/// bijections and check a consistent link bijection exists.
pub fn oracle_isomorphic(a: &Bigraph, b: &Bigraph) -> bool {
    if a.node_count() != b.node_count()
        || a.regions() != b.regions()
        || a.sites().len() != b.sites().len()
        || a.links().len() != b.links().len()
    {
        return false;
    }
    let n = a.node_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    try_bijection(a, b, 0, &mut map, &mut used)
}

fn try_bijection(
    a: &Bigraph,
    b: &Bigraph,
    i: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == map.len() {
        return check_bijection(a, b, map);
    }
    for j in 0..used.len() {
        if used[j] {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if try_bijection(a, b, i + 1, map, used) {
            return true;
        }
        used[j] = false;
        map[i] = usize::MAX;
    }
    false
}

fn check_bijection(a: &Bigraph, b: &Bigraph, map: &[usize]) -> bool {
    // Controls and parents.
    for (i, &j) in map.iter().enumerate() {
        if a.node(i).control != b.node(j).control {
            return false;
        }
        let want = match a.node(i).parent {
            Place::Region(r) => Place::Region(r),
            Place::Node(p) => Place::Node(map[p]),
        };
        if b.node(j).parent != want {
            return false;
        }
    }
    // Sites are fixed by index.
    for (s, &place) in a.sites().iter().enumerate() {
        let want = match place {
            Place::Region(r) => Place::Region(r),
            Place::Node(p) => Place::Node(map[p]),
        };
        if b.sites()[s] != want {
            return false;
        }
    }
    // Link bijection induced by ports.
    let mut link_map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut link_inv: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &j) in map.iter().enumerate() {
        let pa = &a.node(i).ports;
        let pb = &b.node(j).ports;
        if pa.len() != pb.len() {
            return false;
        }
        for (&la, &lb) in pa.iter().zip(pb.iter()) {
            match (link_map.get(&la), link_inv.get(&lb)) {
                (None, None) => {
                    link_map.insert(la, lb);
                    link_inv.insert(lb, la);
                }
                (Some(&x), _) if x != lb => return false,
                (_, Some(&y)) if y != la => return false,
                _ => {}
            }
        }
    }
    // Mapped links preserve kind and name.
    for (&la, &lb) in &link_map {
        if a.link(la).name != b.link(lb).name {
            return false;
        }
    }
    // Idle links: open ones must pair up by name, closed ones by count.
    let idle_a: Vec<usize> = (0..a.links().len())
        .filter(|l| !link_map.contains_key(l))
        .collect();
    let idle_b: Vec<usize> = (0..b.links().len())
        .filter(|l| !link_inv.contains_key(l))
        .collect();
    if idle_a.len() != idle_b.len() {
        return false;
    }
    let names_a: BTreeSet<&Option<String>> = idle_a.iter().map(|&l| &a.link(l).name).collect();
    let names_b: BTreeSet<&Option<String>> = idle_b.iter().map(|&l| &b.link(l).name).collect();
    if names_a != names_b {
        return false;
    }
    let open_a = idle_a.iter().filter(|&&l| a.link(l).is_open()).count();
    let open_b = idle_b.iter().filter(|&&l| b.link(l).is_open()).count();
    open_a == open_b
}
