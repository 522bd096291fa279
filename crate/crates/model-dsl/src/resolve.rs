//! Resolution: turns a parsed model file into engine-ready values by
//! expanding bigraph definitions, numbering sites, building rules, splicing
//! imported rule-pack classes, and binding predicates and properties.

use std::collections::{BTreeMap, BTreeSet};

use bigraph_core::{
    build_bigraph, build_ground, int_param, node, pnode, site, str_param, Bigraph, ControlTable,
    Term,
};
use brs_engine::{InstantiationMap, Predicate, ReactionRule};
use ctl_checker::{parse_formula, Formula};
use gdpr_privacy_pack::{privacy_catalog, privacy_rules, sort_scheme_text, standard_properties};
use sorting::{parse_sort_scheme, SortScheme};

use crate::ast::*;
use crate::error::DslError;

/// The predicate a gdpr import requires the model to bind.
const DATA_TRANSFER: &str = "dataTransfer";

/// An engine-ready model.
#[derive(Debug)]
pub struct ResolvedModel {
    pub table: ControlTable,
    pub initial: Bigraph,
    /// Priority classes, highest first; flattened order is deterministic.
    pub classes: Vec<Vec<ReactionRule>>,
    pub predicates: Vec<Predicate>,
    pub properties: Vec<ResolvedProperty>,
    /// Present iff the model declares a `sorts` block.
    pub sorts: Option<SortScheme>,
    /// Criteria domain of the gdpr import, if any.
    pub criteria: Option<Vec<i64>>,
}

/// A named temporal property with its source text and parsed formula.
#[derive(Debug, Clone)]
pub struct ResolvedProperty {
    pub name: String,
    pub text: String,
    pub formula: Formula,
}

pub(crate) fn resolve_model(file: &ModelFile) -> Result<ResolvedModel, DslError> {
    let mut use_decl: Option<&UseGdpr> = None;
    let mut ctrls: Vec<&CtrlDecl> = Vec::new();
    let mut big_decls: Vec<&BigDecl> = Vec::new();
    let mut init_decl: Option<&Expr> = None;
    let mut reacts: Vec<&ReactDecl> = Vec::new();
    let mut priorities: Option<&[PriorityClass]> = None;
    let mut preds: Vec<&PredDecl> = Vec::new();
    let mut props: Vec<&PropDecl> = Vec::new();
    let mut sorts_raw: Option<&str> = None;

    for item in &file.items {
        match item {
            Item::Use(u) => {
                if use_decl.replace(u).is_some() {
                    return Err(DslError::invalid("only one `use` statement is allowed"));
                }
            }
            Item::Ctrl(c) => ctrls.push(c),
            Item::Big(b) => big_decls.push(b),
            Item::Init(e) => {
                if init_decl.replace(e).is_some() {
                    return Err(DslError::invalid("only one `init` statement is allowed"));
                }
            }
            Item::React(r) => reacts.push(r),
            Item::Priorities(p) => {
                if priorities.replace(p).is_some() {
                    return Err(DslError::invalid(
                        "only one `priorities` statement is allowed",
                    ));
                }
            }
            Item::Pred(p) => preds.push(p),
            Item::Prop(p) => props.push(p),
            Item::Sorts(raw) => {
                if sorts_raw.replace(raw).is_some() {
                    return Err(DslError::invalid("only one `sorts` block is allowed"));
                }
            }
        }
    }

    let init_decl = init_decl.ok_or_else(|| DslError::invalid("model has no `init` statement"))?;

    let criteria: Option<Vec<i64>> = match use_decl {
        Some(u) => {
            if u.lo < 1 || u.lo > u.hi {
                return Err(DslError::invalid(format!(
                    "criteria range `{}..{}` must be a non-empty range of positive numbers",
                    u.lo, u.hi
                )));
            }
            Some((u.lo..=u.hi).collect())
        }
        None => None,
    };

    // Control table: declared controls plus, under an import, the pack's.
    let mut table = ControlTable::new();
    for c in &ctrls {
        table.declare(&c.name, c.arity, c.atomic).map_err(|_| {
            DslError::invalid(format!(
                "control `{}` is declared twice with different signatures",
                c.name
            ))
        })?;
    }
    if use_decl.is_some() {
        table
            .merge(privacy_catalog().table())
            .map_err(|e| DslError::invalid(format!("conflict with the privacy catalog: {e}")))?;
    }

    // Bigraph definitions, expanded in declaration order so later ones may
    // splice earlier ones.
    let mut bigs: BTreeMap<String, Vec<ETerm>> = BTreeMap::new();
    for b in &big_decls {
        if bigs.contains_key(&b.name) {
            return Err(DslError::invalid(format!(
                "bigraph `{}` is defined twice",
                b.name
            )));
        }
        if table.contains(&b.name) {
            return Err(DslError::invalid(format!(
                "bigraph `{}` shadows a control of the same name",
                b.name
            )));
        }
        if !b.body.closures.is_empty() {
            return Err(DslError::invalid(format!(
                "bigraph `{}`: closures belong on the expression that splices it",
                b.name
            )));
        }
        let [region] = b.body.regions.as_slice() else {
            return Err(DslError::invalid(format!(
                "bigraph `{}` must be a single region",
                b.name
            )));
        };
        if contains_site(region) {
            return Err(DslError::invalid(format!(
                "bigraph `{}` cannot contain `id`",
                b.name
            )));
        }
        let expanded = expand_terms(region, &table, &bigs)?;
        bigs.insert(b.name.clone(), expanded);
    }

    let initial = build_expr(init_decl, &table, &bigs, true, "init")?.bigraph;

    // Reaction rules, in declaration order.
    let mut rules: Vec<ReactionRule> = Vec::new();
    for r in &reacts {
        let redex = build_expr(
            &r.redex,
            &table,
            &bigs,
            false,
            &format!("rule `{}`", r.name),
        )?;
        let reactum = build_expr(
            &r.reactum,
            &table,
            &bigs,
            false,
            &format!("rule `{}`", r.name),
        )?;
        let eta = match &r.eta {
            Some(map) => InstantiationMap::new(map.clone()),
            None => InstantiationMap::identity(reactum.sites),
        };
        let rule = ReactionRule::new(&r.name, redex.bigraph, reactum.bigraph, eta)
            .map_err(|e| DslError::invalid(format!("rule `{}`: {e}", r.name)))?;
        rules.push(rule);
    }

    let pack_classes: Vec<Vec<ReactionRule>> = match &criteria {
        Some(domain) => privacy_rules(domain)
            .map_err(|e| DslError::invalid(e.to_string()))?
            .into_classes(),
        None => Vec::new(),
    };

    let classes = assemble_classes(priorities, use_decl.is_some(), pack_classes, &rules)?;
    if classes.is_empty() {
        return Err(DslError::invalid("model defines no reaction rules"));
    }

    // Predicates and properties. A gdpr import contributes the standard
    // set, parameterized by the model's own `dataTransfer` pattern.
    let mut predicates: Vec<Predicate> = Vec::new();
    let mut properties: Vec<ResolvedProperty> = Vec::new();
    if use_decl.is_some() {
        let dt = preds
            .iter()
            .find(|p| p.name == DATA_TRANSFER)
            .ok_or_else(|| {
                DslError::invalid(format!(
                    "a gdpr import needs the model to bind `pred {DATA_TRANSFER} = ...;`"
                ))
            })?;
        let pattern = build_expr(&dt.body, &table, &bigs, false, "pred `dataTransfer`")?.bigraph;
        let std = standard_properties(pattern);
        predicates.extend(std.predicates().iter().cloned());
        for p in std.properties() {
            let formula = parse_formula(&p.formula)
                .map_err(|e| DslError::invalid(format!("property `{}`: {e}", p.name)))?;
            properties.push(ResolvedProperty {
                name: p.name.clone(),
                text: p.formula.clone(),
                formula,
            });
        }
    }
    for p in &preds {
        if use_decl.is_some() && p.name == DATA_TRANSFER {
            continue;
        }
        if predicates.iter().any(|q| q.name == p.name) {
            return Err(DslError::invalid(format!(
                "predicate `{}` is already defined",
                p.name
            )));
        }
        let pattern =
            build_expr(&p.body, &table, &bigs, false, &format!("pred `{}`", p.name))?.bigraph;
        predicates.push(Predicate::new(&p.name, pattern));
    }
    for p in &props {
        if properties.iter().any(|q| q.name == p.name) {
            return Err(DslError::invalid(format!(
                "property `{}` is already defined",
                p.name
            )));
        }
        let formula = parse_formula(&p.text)
            .map_err(|e| DslError::invalid(format!("property `{}`: {e}", p.name)))?;
        properties.push(ResolvedProperty {
            name: p.name.clone(),
            text: p.text.clone(),
            formula,
        });
    }
    for rp in &properties {
        for atom in rp.formula.atoms() {
            if !predicates.iter().any(|p| p.name == atom) {
                return Err(DslError::invalid(format!(
                    "property `{}` uses undefined predicate `{atom}`",
                    rp.name
                )));
            }
        }
    }

    // A sort discipline exists iff the model declares one; an import
    // prepends the pack's scheme so the block only covers model controls.
    let sorts: Option<SortScheme> = match sorts_raw {
        Some(raw) => {
            let text = match &criteria {
                Some(domain) => format!(
                    "{}\n{}",
                    sort_scheme_text(domain).map_err(|e| DslError::invalid(e.to_string()))?,
                    raw
                ),
                None => raw.to_string(),
            };
            let scheme =
                parse_sort_scheme(&text).map_err(|e| DslError::invalid(format!("sorts: {e}")))?;
            Some(scheme)
        }
        None => None,
    };

    Ok(ResolvedModel {
        table,
        initial,
        classes,
        predicates,
        properties,
        sorts,
        criteria,
    })
}

fn assemble_classes(
    priorities: Option<&[PriorityClass]>,
    has_import: bool,
    pack_classes: Vec<Vec<ReactionRule>>,
    rules: &[ReactionRule],
) -> Result<Vec<Vec<ReactionRule>>, DslError> {
    let Some(decl) = priorities else {
        // Default layout: imported classes first, then every model rule in
        // one class of its own.
        let mut out = pack_classes;
        if !rules.is_empty() {
            out.push(rules.to_vec());
        }
        return Ok(out);
    };
    let gdpr_count = decl
        .iter()
        .filter(|c| matches!(c, PriorityClass::Gdpr))
        .count();
    if has_import && gdpr_count != 1 {
        return Err(DslError::invalid(
            "priorities must mention the `gdpr` class exactly once",
        ));
    }
    if !has_import && gdpr_count != 0 {
        return Err(DslError::invalid(
            "priorities mention `gdpr` but the model does not import it",
        ));
    }
    let by_name: BTreeMap<&str, &ReactionRule> = rules.iter().map(|r| (r.name(), r)).collect();
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for class in decl {
        match class {
            PriorityClass::Gdpr => out.extend(pack_classes.iter().cloned()),
            PriorityClass::Rules(names) => {
                let mut cls = Vec::new();
                for name in names {
                    let rule = by_name.get(name.as_str()).ok_or_else(|| {
                        DslError::invalid(format!("priorities reference unknown rule `{name}`"))
                    })?;
                    if !used.insert(name.clone()) {
                        return Err(DslError::invalid(format!(
                            "rule `{name}` appears twice in priorities"
                        )));
                    }
                    cls.push((*rule).clone());
                }
                out.push(cls);
            }
        }
    }
    for rule in rules {
        if !used.contains(rule.name()) {
            return Err(DslError::invalid(format!(
                "rule `{}` is missing from priorities",
                rule.name()
            )));
        }
    }
    Ok(out)
}

struct BuiltExpr {
    bigraph: Bigraph,
    sites: usize,
}

/// Builds an expression into a bigraph, numbering sites in order of
/// appearance. Ground expressions close every link name and admit no sites.
fn build_expr(
    expr: &Expr,
    table: &ControlTable,
    bigs: &BTreeMap<String, Vec<ETerm>>,
    ground: bool,
    what: &str,
) -> Result<BuiltExpr, DslError> {
    let mut seen = BTreeSet::new();
    for c in &expr.closures {
        if !seen.insert(c.as_str()) {
            return Err(DslError::invalid(format!(
                "{what}: link `{c}` is closed twice"
            )));
        }
    }
    let mut sites = 0usize;
    let mut regions: Vec<Vec<Term>> = Vec::new();
    for region in &expr.regions {
        let expanded = expand_terms(region, table, bigs)?;
        regions.push(to_terms(&expanded, &mut sites));
    }
    let bigraph = if ground {
        if sites > 0 {
            return Err(DslError::invalid(format!(
                "{what}: a concrete state cannot contain `id`"
            )));
        }
        build_ground(table, &regions)
    } else {
        let closed: Vec<&str> = expr.closures.iter().map(String::as_str).collect();
        build_bigraph(table, &regions, &closed)
    }
    .map_err(|e| DslError::invalid(format!("{what}: {e}")))?;
    Ok(BuiltExpr { bigraph, sites })
}

/// Replaces splices of defined bigraphs by their bodies and checks that
/// every remaining name is a declared control.
fn expand_terms(
    terms: &[ETerm],
    table: &ControlTable,
    bigs: &BTreeMap<String, Vec<ETerm>>,
) -> Result<Vec<ETerm>, DslError> {
    let mut out = Vec::new();
    for term in terms {
        match term {
            ETerm::Site => out.push(ETerm::Site),
            ETerm::Node {
                name,
                param,
                links,
                children,
            } => {
                if let Some(body) = bigs.get(name) {
                    if param.is_some() || !links.is_empty() || !children.is_empty() {
                        return Err(DslError::invalid(format!(
                            "bigraph `{name}` is spliced bare: it takes no parameter, links, or children"
                        )));
                    }
                    out.extend(body.iter().cloned());
                } else if table.contains(name) {
                    out.push(ETerm::Node {
                        name: name.clone(),
                        param: param.clone(),
                        links: links.clone(),
                        children: expand_terms(children, table, bigs)?,
                    });
                } else {
                    return Err(DslError::UnknownControl(name.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn to_terms(eterms: &[ETerm], next_site: &mut usize) -> Vec<Term> {
    eterms
        .iter()
        .map(|term| match term {
            ETerm::Site => {
                let s = site(*next_site);
                *next_site += 1;
                s
            }
            ETerm::Node {
                name,
                param,
                links,
                children,
            } => {
                let kids = to_terms(children, next_site);
                let link_refs: Vec<&str> = links.iter().map(String::as_str).collect();
                match param {
                    None => node(name, &link_refs, kids),
                    Some(PValue::Int(n)) => pnode(name, int_param(*n), &link_refs, kids),
                    Some(PValue::Str(s)) => pnode(name, str_param(s), &link_refs, kids),
                }
            }
        })
        .collect()
}

fn contains_site(terms: &[ETerm]) -> bool {
    terms.iter().any(|t| match t {
        ETerm::Site => true,
        ETerm::Node { children, .. } => contains_site(children),
    })
}
