use std::collections::BTreeMap;

use crate::bigraph::{Bigraph, LinkData, NodeData, Place};
use crate::control::{ControlTable, ParamValue};
use crate::error::BuildError;

/// A construction term: a node with nested children, or a site.
///
/// Links are referenced by name; [`build_bigraph`] decides which names stay
/// open and which become edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Node {
        control: String,
        param: Option<ParamValue>,
        links: Vec<String>,
        children: Vec<Term>,
    },
    Site(usize),
}

/// Node term without a parameter.
pub fn node(control: &str, links: &[&str], children: Vec<Term>) -> Term {
    Term::Node {
        control: control.to_string(),
        param: None,
        links: links.iter().map(|s| s.to_string()).collect(),
        children,
    }
}

/// Node term with a parameter, e.g. `pnode("L", str_param("Ireland"), &[], ...)`.
pub fn pnode(control: &str, param: ParamValue, links: &[&str], children: Vec<Term>) -> Term {
    Term::Node {
        control: control.to_string(),
        param: Some(param),
        links: links.iter().map(|s| s.to_string()).collect(),
        children,
    }
}

pub fn site(index: usize) -> Term {
    Term::Site(index)
}

pub fn int_param(v: i64) -> ParamValue {
    ParamValue::Int(v)
}

pub fn str_param(v: &str) -> ParamValue {
    ParamValue::Str(v.to_string())
}

/// Build a bigraph from one forest of terms per region, validating against
/// the control table. Names listed in `closed_names` become edges; the rest
/// stay open.
pub fn build_bigraph(
    table: &ControlTable,
    regions: &[Vec<Term>],
    closed_names: &[&str],
) -> Result<Bigraph, BuildError> {
    Builder::new(table).build(regions, |name| closed_names.contains(&name))
}

/// Build a ground bigraph: every link name becomes an edge.
pub fn build_ground(table: &ControlTable, regions: &[Vec<Term>]) -> Result<Bigraph, BuildError> {
    Builder::new(table).build(regions, |_| true)
}

struct Builder<'a> {
    table: &'a ControlTable,
    nodes: Vec<NodeData>,
    sites: Vec<(usize, Place)>,
    link_ids: BTreeMap<String, usize>,
}

impl<'a> Builder<'a> {
    fn new(table: &'a ControlTable) -> Self {
        Builder {
            table,
            nodes: Vec::new(),
            sites: Vec::new(),
            link_ids: BTreeMap::new(),
        }
    }

    fn build(
        mut self,
        regions: &[Vec<Term>],
        close: impl Fn(&str) -> bool,
    ) -> Result<Bigraph, BuildError> {
        for (r, forest) in regions.iter().enumerate() {
            for term in forest {
                self.walk(term, Place::Region(r))?;
            }
        }

        self.sites.sort_unstable_by_key(|(idx, _)| *idx);
        let indices: Vec<usize> = self.sites.iter().map(|(idx, _)| *idx).collect();
        if indices.iter().enumerate().any(|(want, &got)| want != got) {
            return Err(BuildError::SiteNumbering { found: indices });
        }
        let sites: Vec<Place> = self.sites.iter().map(|(_, p)| *p).collect();

        let mut links = vec![LinkData::edge(); self.link_ids.len()];
        for (name, id) in &self.link_ids {
            links[*id] = if close(name) {
                LinkData::edge()
            } else {
                LinkData::open(name)
            };
        }

        Bigraph::from_parts(self.nodes, regions.len(), sites, links)
    }

    fn walk(&mut self, term: &Term, parent: Place) -> Result<(), BuildError> {
        match term {
            Term::Site(index) => {
                self.sites.push((*index, parent));
                Ok(())
            }
            Term::Node {
                control,
                param,
                links,
                children,
            } => {
                let ctrl = self.table.instantiate(control, param.clone())?;
                let mut ports = Vec::with_capacity(links.len());
                for name in links {
                    let next = self.link_ids.len();
                    ports.push(*self.link_ids.entry(name.clone()).or_insert(next));
                }
                if ports.len() != ctrl.arity {
                    return Err(BuildError::ArityMismatch {
                        control: control.clone(),
                        node: self.nodes.len(),
                        expected: ctrl.arity,
                        actual: ports.len(),
                    });
                }
                let id = self.nodes.len();
                self.nodes.push(NodeData {
                    control: ctrl,
                    parent,
                    ports,
                });
                for child in children {
                    self.walk(child, Place::Node(id))?;
                }
                Ok(())
            }
        }
    }
}
