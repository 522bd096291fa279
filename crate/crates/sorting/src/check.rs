//! Sort checking for bigraphs and reaction rules.
//!
//! Ground structure is checked strictly; abstraction is tolerated exactly
//! where it appears. A site among a node's children stands for unknown
//! extra content, so the child constraint is satisfiable-with-extension
//! rather than exact. An open link may gain peers under composition, so
//! only present peers are checked against the mentioned sorts. A port with
//! no peers at all is never flagged: rewriting legitimately deletes link
//! partners.

use std::fmt;

use bigraph_core::{Bigraph, Control, LinkId, NodeId, Place};
use brs_engine::ReactionRule;

use crate::error::SortError;
use crate::expr::SortExpr;
use crate::scheme::SortScheme;

/// Where a violation sits: a concrete node or a concrete link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SortLocation {
    Node(NodeId),
    Link(LinkId),
}

impl fmt::Display for SortLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortLocation::Node(n) => write!(f, "node {n}"),
            SortLocation::Link(l) => write!(f, "link {l}"),
        }
    }
}

/// One sort violation, pinpointing the offending node or link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortDiagnostic {
    pub location: SortLocation,
    /// Text of the violated constraint.
    pub constraint: String,
    pub message: String,
}

impl fmt::Display for SortDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (violates {})",
            self.location, self.message, self.constraint
        )
    }
}

fn control_label(control: &Control) -> String {
    match &control.param {
        None => control.name.clone(),
        Some(p) => format!("{}({})", control.name, p),
    }
}

/// Check every node's children and every constrained port's peers.
///
/// Returns the violations found; errs with [`SortError::UnsortedControl`]
/// if the bigraph contains a control the scheme does not cover.
pub fn check_sorts(scheme: &SortScheme, b: &Bigraph) -> Result<Vec<SortDiagnostic>, SortError> {
    let mut out = Vec::new();

    // Sort of every node, resolved up front so peers can be named.
    let mut node_sort: Vec<&str> = Vec::with_capacity(b.node_count());
    for data in b.nodes() {
        let (sort, _) = scheme
            .member(&data.control)
            .ok_or_else(|| SortError::UnsortedControl(control_label(&data.control)))?;
        node_sort.push(sort);
    }

    for (id, data) in b.nodes().iter().enumerate() {
        let (_, member) = scheme.member(&data.control).expect("resolved above");
        let label = control_label(&data.control);

        // Child constraint.
        let mut child_sorts: Vec<String> = b
            .children(Place::Node(id))
            .iter()
            .map(|&c| node_sort[c].to_string())
            .collect();
        child_sorts.sort();
        let has_site = !b.sites_at(Place::Node(id)).is_empty();
        let ok = match (&member.children, has_site) {
            (None, _) => child_sorts.is_empty(),
            (Some(expr), false) => expr.sat(&child_sorts),
            (Some(expr), true) => expr.sat_extensible(&child_sorts),
        };
        if !ok {
            let constraint = member
                .children
                .as_ref()
                .map(|e| e.to_string())
                .unwrap_or_else(|| "1".to_string());
            out.push(SortDiagnostic {
                location: SortLocation::Node(id),
                constraint,
                message: format!(
                    "children of {label} have sorts [{}]",
                    child_sorts.join(", ")
                ),
            });
        }

        // Peer constraints, one per constrained port.
        for (port, &link) in data.ports.iter().enumerate() {
            let Some(expr) = scheme.peer_constraint(member, port) else {
                continue;
            };
            let mut peers: Vec<String> = Vec::new();
            for &(n2, p2) in b.points(link) {
                if (n2, p2) == (id, port) {
                    continue;
                }
                let peer_member = scheme.member(&b.node(n2).control).expect("resolved above");
                peers.push(
                    scheme
                        .port_sort(peer_member.1, p2)
                        .unwrap_or("<unsorted port>")
                        .to_string(),
                );
            }
            if peers.is_empty() {
                continue;
            }
            peers.sort();
            let port_sort = scheme.port_sort(member, port).unwrap_or("?");
            let violation = if *expr == SortExpr::One {
                Some("must be closed, but has peers".to_string())
            } else {
                let mentioned = expr.mentioned();
                let stray: Vec<&String> = peers
                    .iter()
                    .filter(|p| !mentioned.contains(p.as_str()))
                    .collect();
                if !stray.is_empty() {
                    Some(format!(
                        "is linked to a port of sort {}",
                        stray
                            .iter()
                            .map(|s| s.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ))
                } else if !b.link(link).is_open() && !expr.sat_sub(&peers) {
                    Some(format!("has peers [{}]", peers.join(", ")))
                } else {
                    None
                }
            };
            if let Some(what) = violation {
                out.push(SortDiagnostic {
                    location: SortLocation::Link(link),
                    constraint: expr.to_string(),
                    message: format!("port {port} of {label} (sort {port_sort}) {what}"),
                });
            }
        }
    }

    Ok(out)
}

/// Check the redex and reactum of every rule, flagging only violations
/// forced regardless of what sites and open links stand for.
pub fn check_rules<'a>(
    scheme: &SortScheme,
    rules: impl IntoIterator<Item = &'a ReactionRule>,
) -> Result<Vec<SortDiagnostic>, SortError> {
    let mut out = Vec::new();
    for rule in rules {
        for (side, b) in [("redex", rule.redex()), ("reactum", rule.reactum())] {
            for d in check_sorts(scheme, b)? {
                out.push(SortDiagnostic {
                    location: d.location,
                    constraint: d.constraint,
                    message: format!("rule {}, {side}: {}", rule.name(), d.message),
                });
            }
        }
    }
    Ok(out)
}
