//! Sort expressions: multiset constraints over sort names.

use std::collections::BTreeSet;
use std::fmt;

/// A constraint on a multiset of sorts (children of a node, or peers of a
/// port). `One` is the empty multiset; `Sort` demands exactly one element;
/// products split the multiset between factors; alternatives offer a choice;
/// star means zero or more disjoint groups each satisfying the body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortExpr {
    One,
    Sort(String),
    Star(Box<SortExpr>),
    Prod(Vec<SortExpr>),
    Alt(Vec<SortExpr>),
}

impl SortExpr {
    /// Every sort name appearing anywhere in the expression.
    pub fn mentioned(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_mentioned(&mut out);
        out
    }

    fn collect_mentioned<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            SortExpr::One => {}
            SortExpr::Sort(s) => {
                out.insert(s);
            }
            SortExpr::Star(f) => f.collect_mentioned(out),
            SortExpr::Prod(fs) | SortExpr::Alt(fs) => {
                for f in fs {
                    f.collect_mentioned(out);
                }
            }
        }
    }

    /// Exact satisfaction: the whole multiset must be consumed.
    pub fn sat(&self, multiset: &[String]) -> bool {
        match self {
            SortExpr::One => multiset.is_empty(),
            SortExpr::Sort(s) => multiset.len() == 1 && multiset[0] == *s,
            SortExpr::Alt(fs) => fs.iter().any(|f| f.sat(multiset)),
            SortExpr::Prod(fs) => {
                let mut parts: Vec<Vec<String>> = vec![Vec::new(); fs.len()];
                assign(fs, multiset, 0, &mut parts)
            }
            SortExpr::Star(f) => {
                if multiset.is_empty() {
                    return true;
                }
                // Peel off one group containing the first element.
                let rest: Vec<String> = multiset[1..].to_vec();
                for mask in 0..(1u32 << rest.len().min(20)) {
                    let mut group = vec![multiset[0].clone()];
                    let mut remainder = Vec::new();
                    for (i, elem) in rest.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            group.push(elem.clone());
                        } else {
                            remainder.push(elem.clone());
                        }
                    }
                    if f.sat(&group) && self.sat(&remainder) {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Satisfaction with a hole: can some superset of `multiset` satisfy
    /// exactly? Used where a site abstracts unknown extra children. Rather
    /// than searching over extensions, this evaluates directly: a sort atom
    /// accepts up to one matching element, and products and stars
    /// distribute only the known elements.
    pub fn sat_extensible(&self, multiset: &[String]) -> bool {
        match self {
            SortExpr::One => multiset.is_empty(),
            SortExpr::Sort(s) => multiset.is_empty() || (multiset.len() == 1 && multiset[0] == *s),
            SortExpr::Alt(fs) => fs.iter().any(|f| f.sat_extensible(multiset)),
            SortExpr::Prod(fs) => {
                let mut parts: Vec<Vec<String>> = vec![Vec::new(); fs.len()];
                assign_open(fs, multiset, 0, &mut parts)
            }
            SortExpr::Star(f) => {
                if multiset.is_empty() {
                    return true;
                }
                let rest: Vec<String> = multiset[1..].to_vec();
                for mask in 0..(1u32 << rest.len().min(20)) {
                    let mut group = vec![multiset[0].clone()];
                    let mut remainder = Vec::new();
                    for (i, elem) in rest.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            group.push(elem.clone());
                        } else {
                            remainder.push(elem.clone());
                        }
                    }
                    if f.sat_extensible(&group) && self.sat_extensible(&remainder) {
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Can some sub-multiset of `multiset` satisfy exactly? Ports tolerate
    /// extra peers as long as every peer sort is mentioned; this check
    /// covers the obligations half.
    pub fn sat_sub(&self, multiset: &[String]) -> bool {
        let n = multiset.len().min(20);
        for mask in 0..(1u32 << n) {
            let sub: Vec<String> = multiset
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << *i) != 0)
                .map(|(_, s)| s.clone())
                .collect();
            if self.sat(&sub) {
                return true;
            }
        }
        false
    }

    fn precedence(&self) -> u8 {
        match self {
            SortExpr::Alt(_) => 1,
            SortExpr::Prod(_) => 2,
            SortExpr::One | SortExpr::Sort(_) | SortExpr::Star(_) => 3,
        }
    }
}

fn assign(fs: &[SortExpr], multiset: &[String], at: usize, parts: &mut Vec<Vec<String>>) -> bool {
    if at == multiset.len() {
        return fs.iter().zip(parts.iter()).all(|(f, p)| f.sat(p));
    }
    for k in 0..fs.len() {
        parts[k].push(multiset[at].clone());
        if assign(fs, multiset, at + 1, parts) {
            parts[k].pop();
            return true;
        }
        parts[k].pop();
    }
    false
}

fn assign_open(
    fs: &[SortExpr],
    multiset: &[String],
    at: usize,
    parts: &mut Vec<Vec<String>>,
) -> bool {
    if at == multiset.len() {
        return fs
            .iter()
            .zip(parts.iter())
            .all(|(f, p)| f.sat_extensible(p));
    }
    for k in 0..fs.len() {
        parts[k].push(multiset[at].clone());
        if assign_open(fs, multiset, at + 1, parts) {
            parts[k].pop();
            return true;
        }
        parts[k].pop();
    }
    false
}

impl fmt::Display for SortExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &SortExpr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "(")?;
                fmt::Display::fmt(e, f)?;
                write!(f, ")")
            } else {
                fmt::Display::fmt(e, f)
            }
        }
        match self {
            SortExpr::One => write!(f, "1"),
            SortExpr::Sort(s) => write!(f, "{s}"),
            SortExpr::Star(e) => {
                // A directly nested star must be parenthesized: `a**` is a
                // syntax error, `(a*)*` round-trips.
                if matches!(**e, SortExpr::Star(_)) {
                    write!(f, "(")?;
                    fmt::Display::fmt(&**e, f)?;
                    write!(f, ")")?;
                } else {
                    child(f, e, 3)?;
                }
                write!(f, "*")
            }
            SortExpr::Prod(fs) => {
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " \u{d7} ")?;
                    }
                    child(f, e, 2)?;
                }
                Ok(())
            }
            SortExpr::Alt(fs) => {
                for (i, e) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    child(f, e, 2)?;
                }
                Ok(())
            }
        }
    }
}
