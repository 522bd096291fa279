//! Parsed sort schemes: declarations, members, and lookup.

use std::collections::{BTreeMap, BTreeSet};

use bigraph_core::{Control, ParamValue};

use crate::expr::SortExpr;

/// Sort and optional peer constraint for one port of a member control.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortSpec {
    pub sort: String,
    pub peers: Option<SortExpr>,
}

/// One control's membership in a node sort: the port sorts it exposes and
/// the constraint on its children. `children: None` declares the control
/// atomic within the sort (it must have no children). `param: None` on a
/// parameterized control acts as a wildcard for any parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub control: String,
    pub param: Option<ParamValue>,
    pub ports: Vec<PortSpec>,
    pub children: Option<SortExpr>,
}

/// A named node sort with its member controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortDecl {
    pub name: String,
    pub members: Vec<Member>,
}

/// A complete scheme: node sorts, port sorts, and any global per-port-sort
/// peer constraints (`sort y -> expr;`). Member-local constraints take
/// precedence over global ones.
#[derive(Debug, Clone, Default)]
pub struct SortScheme {
    pub(crate) decls: Vec<SortDecl>,
    pub(crate) port_sorts: BTreeSet<String>,
    pub(crate) global_peers: BTreeMap<String, SortExpr>,
    pub(crate) warnings: Vec<String>,
    /// (control, param) -> (decl index, member index); wildcard under None.
    pub(crate) index: BTreeMap<(String, Option<ParamValue>), (usize, usize)>,
}

impl SortScheme {
    /// Node sort declarations in source order.
    pub fn decls(&self) -> &[SortDecl] {
        &self.decls
    }

    /// Declared and auto-declared port sorts.
    pub fn port_sorts(&self) -> &BTreeSet<String> {
        &self.port_sorts
    }

    /// Non-fatal oddities found while parsing: auto-declared port sorts,
    /// declared-but-unused sorts.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Find the sort and member covering a control instance: an exact
    /// (name, param) entry wins over a parameterless wildcard entry.
    pub fn member(&self, control: &Control) -> Option<(&str, &Member)> {
        let exact = (control.name.clone(), control.param.clone());
        let hit = self.index.get(&exact).or_else(|| {
            control
                .param
                .as_ref()
                .and_then(|_| self.index.get(&(control.name.clone(), None)))
        })?;
        let decl = &self.decls[hit.0];
        Some((decl.name.as_str(), &decl.members[hit.1]))
    }

    /// Sort of a member's port, if declared.
    pub fn port_sort<'a>(&self, member: &'a Member, port: usize) -> Option<&'a str> {
        member.ports.get(port).map(|p| p.sort.as_str())
    }

    /// Peer constraint for a member's port: the member-local expression,
    /// falling back to a global `sort y -> expr` declaration.
    pub fn peer_constraint<'a>(&'a self, member: &'a Member, port: usize) -> Option<&'a SortExpr> {
        let spec = member.ports.get(port)?;
        spec.peers
            .as_ref()
            .or_else(|| self.global_peers.get(&spec.sort))
    }
}
