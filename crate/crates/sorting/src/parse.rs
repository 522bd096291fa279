//! Parser for the sort-scheme text format.
//!
//! ```text
//! sort y;                      port sorts (comma-separable)
//! sort y -> expr;              port sort with a global peer constraint
//! sort b = A | B {y -> z*} x;  node sort with member controls
//! ```
//!
//! A member is a control name, an optional parameter literal in parentheses
//! (an integer or a quoted string), optional per-port specs in braces, and
//! an optional child expression; no child expression means the control is
//! atomic in this sort. Expressions combine sort names with `+` (choice),
//! `×` or `.` (product), postfix `*` (zero or more), and `1` (empty).

use std::collections::{BTreeMap, BTreeSet};

use bigraph_core::ParamValue;

use crate::error::SortError;
use crate::expr::SortExpr;
use crate::scheme::{Member, PortSpec, SortDecl, SortScheme};

/// Parse and validate a scheme.
pub fn parse_sort_scheme(text: &str) -> Result<SortScheme, SortError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let mut scheme = SortScheme::default();
    let mut declared_ports: BTreeSet<String> = BTreeSet::new();
    while !parser.at_end() {
        parser.expect_keyword("sort")?;
        parser.parse_item(&mut scheme, &mut declared_ports)?;
    }
    validate(&mut scheme, &declared_ports)?;
    Ok(scheme)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Semi,
    Comma,
    Eq,
    Bar,
    Plus,
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Arrow,
    Times,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::Eq => "'='".into(),
            Tok::Bar => "'|'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Times => "'\u{d7}'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SortError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        let start = i;
        match c {
            c if c.is_whitespace() => i += c.len_utf8(),
            '#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            ';' => {
                out.push((start, Tok::Semi));
                i += 1;
            }
            ',' => {
                out.push((start, Tok::Comma));
                i += 1;
            }
            '=' => {
                out.push((start, Tok::Eq));
                i += 1;
            }
            '|' => {
                out.push((start, Tok::Bar));
                i += 1;
            }
            '+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            '{' => {
                out.push((start, Tok::LBrace));
                i += 1;
            }
            '}' => {
                out.push((start, Tok::RBrace));
                i += 1;
            }
            '.' | '\u{d7}' => {
                out.push((start, Tok::Times));
                i += c.len_utf8();
            }
            '\u{2192}' => {
                out.push((start, Tok::Arrow));
                i += c.len_utf8();
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((start, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(SortError::syntax(start, "expected '->'"));
                }
            }
            '"' => {
                i += 1;
                let begin = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(SortError::syntax(start, "unterminated string"));
                }
                out.push((start, Tok::Str(text[begin..i].to_string())));
                i += 1;
            }
            '0'..='9' => {
                let begin = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: i64 = text[begin..i]
                    .parse()
                    .map_err(|_| SortError::syntax(start, "integer literal out of range"))?;
                out.push((start, Tok::Int(value)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let begin = i;
                i += c.len_utf8();
                while i < bytes.len() {
                    let c = text[i..].chars().next().unwrap();
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        i += c.len_utf8();
                    } else {
                        break;
                    }
                }
                out.push((start, Tok::Ident(text[begin..i].to_string())));
            }
            other => {
                return Err(SortError::syntax(
                    start,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(at, _)| *at)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<usize, SortError> {
        match self.bump() {
            Some((at, t)) if t == *want => Ok(at),
            Some((at, t)) => Err(SortError::syntax(
                at,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(SortError::syntax(
                self.end,
                format!("expected {}, found end of input", want.describe()),
            )),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SortError> {
        match self.bump() {
            Some((_, Tok::Ident(s))) if s == kw => Ok(()),
            Some((at, t)) => Err(SortError::syntax(
                at,
                format!("expected '{kw}', found {}", t.describe()),
            )),
            None => Err(SortError::syntax(
                self.end,
                format!("expected '{kw}', found end of input"),
            )),
        }
    }

    fn ident(&mut self) -> Result<(usize, String), SortError> {
        match self.bump() {
            Some((at, Tok::Ident(s))) => Ok((at, s)),
            Some((at, t)) => Err(SortError::syntax(
                at,
                format!("expected a sort or control name, found {}", t.describe()),
            )),
            None => Err(SortError::syntax(
                self.end,
                "expected a name, found end of input",
            )),
        }
    }

    fn parse_item(
        &mut self,
        scheme: &mut SortScheme,
        declared_ports: &mut BTreeSet<String>,
    ) -> Result<(), SortError> {
        let (at, name) = self.ident()?;
        match self.peek() {
            Some(Tok::Eq) => {
                self.bump();
                let mut members = vec![self.parse_member()?];
                while self.peek() == Some(&Tok::Bar) {
                    self.bump();
                    members.push(self.parse_member()?);
                }
                self.expect(&Tok::Semi)?;
                if scheme.decls.iter().any(|d| d.name == name) {
                    return Err(SortError::syntax(at, format!("sort {name} declared twice")));
                }
                scheme.decls.push(SortDecl { name, members });
            }
            Some(Tok::Arrow) => {
                self.bump();
                let expr = self.parse_expr()?;
                self.expect(&Tok::Semi)?;
                if scheme.global_peers.contains_key(&name) {
                    return Err(SortError::syntax(
                        at,
                        format!("peer constraint for sort {name} declared twice"),
                    ));
                }
                declared_ports.insert(name.clone());
                scheme.global_peers.insert(name, expr);
            }
            _ => {
                declared_ports.insert(name);
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    // Tolerate the running style "sort a, sort p, sort et".
                    if matches!(self.peek(), Some(Tok::Ident(s)) if s == "sort")
                        && matches!(self.peek2(), Some(Tok::Ident(_)))
                    {
                        self.bump();
                    }
                    let (_, next) = self.ident()?;
                    declared_ports.insert(next);
                }
                self.expect(&Tok::Semi)?;
            }
        }
        Ok(())
    }

    fn parse_member(&mut self) -> Result<Member, SortError> {
        let (_, control) = self.ident()?;
        // A parenthesized literal straight after the control name is a
        // parameter; a parenthesized sort expression starts a child
        // constraint instead. `(1)` is a parameter, `(1 + a)` a group.
        let param = if self.peek() == Some(&Tok::LParen)
            && matches!(self.peek2(), Some(Tok::Int(_) | Tok::Str(_)))
            && matches!(
                self.tokens.get(self.pos + 2).map(|(_, t)| t),
                Some(Tok::RParen)
            ) {
            self.bump();
            let value = match self.bump() {
                Some((_, Tok::Int(v))) => ParamValue::Int(v),
                Some((_, Tok::Str(s))) => ParamValue::Str(s),
                _ => unreachable!("guarded by peek2"),
            };
            self.expect(&Tok::RParen)?;
            Some(value)
        } else {
            None
        };
        let mut ports = Vec::new();
        if self.peek() == Some(&Tok::LBrace) {
            self.bump();
            loop {
                let (_, sort) = self.ident()?;
                let peers = if self.peek() == Some(&Tok::Arrow) {
                    self.bump();
                    Some(self.parse_expr()?)
                } else {
                    None
                };
                ports.push(PortSpec { sort, peers });
                match self.bump() {
                    Some((_, Tok::Comma)) => continue,
                    Some((_, Tok::RBrace)) => break,
                    Some((at, t)) => {
                        return Err(SortError::syntax(
                            at,
                            format!("expected ',' or '}}' in port list, found {}", t.describe()),
                        ));
                    }
                    None => {
                        return Err(SortError::syntax(self.end, "unterminated port list"));
                    }
                }
            }
        }
        let children = if matches!(self.peek(), Some(Tok::Ident(_) | Tok::Int(1) | Tok::LParen)) {
            Some(self.parse_expr()?)
        } else {
            None
        };
        Ok(Member {
            control,
            param,
            ports,
            children,
        })
    }

    fn parse_expr(&mut self) -> Result<SortExpr, SortError> {
        let mut alts = vec![self.parse_prod()?];
        while self.peek() == Some(&Tok::Plus) {
            self.bump();
            alts.push(self.parse_prod()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            SortExpr::Alt(alts)
        })
    }

    fn parse_prod(&mut self) -> Result<SortExpr, SortError> {
        let mut factors = vec![self.parse_star()?];
        while self.peek() == Some(&Tok::Times) {
            self.bump();
            factors.push(self.parse_star()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            SortExpr::Prod(factors)
        })
    }

    fn parse_star(&mut self) -> Result<SortExpr, SortError> {
        let atom = self.parse_atom()?;
        if self.peek() == Some(&Tok::Star) {
            self.bump();
            if self.peek() == Some(&Tok::Star) {
                return Err(SortError::syntax(self.here(), "repeated '*'"));
            }
            return Ok(SortExpr::Star(Box::new(atom)));
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<SortExpr, SortError> {
        match self.bump() {
            Some((_, Tok::Int(1))) => Ok(SortExpr::One),
            Some((_, Tok::Ident(s))) => Ok(SortExpr::Sort(s)),
            Some((_, Tok::LParen)) => {
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some((at, t)) => Err(SortError::syntax(
                at,
                format!("expected a sort, '1', or '(', found {}", t.describe()),
            )),
            None => Err(SortError::syntax(
                self.end,
                "expected a sort expression, found end of input",
            )),
        }
    }
}

/// Post-parse validation: unique membership, declared references, port-sort
/// bookkeeping with auto-declaration warnings.
fn validate(scheme: &mut SortScheme, declared_ports: &BTreeSet<String>) -> Result<(), SortError> {
    let node_sorts: BTreeSet<&str> = scheme.decls.iter().map(|d| d.name.as_str()).collect();
    for name in declared_ports {
        if node_sorts.contains(name.as_str()) {
            return Err(SortError::syntax(
                0,
                format!("{name} is declared both as a port sort and a node sort"),
            ));
        }
    }

    let mut index: BTreeMap<(String, Option<ParamValue>), (usize, usize)> = BTreeMap::new();
    for (d, decl) in scheme.decls.iter().enumerate() {
        for (m, member) in decl.members.iter().enumerate() {
            let key = (member.control.clone(), member.param.clone());
            if let Some((prev, _)) = index.get(&key) {
                return Err(SortError::DuplicateControlSort {
                    control: member.control.clone(),
                    first: scheme.decls[*prev].name.clone(),
                    second: decl.name.clone(),
                });
            }
            index.insert(key, (d, m));
        }
    }

    // Child expressions may reference only declared node sorts.
    for decl in &scheme.decls {
        for member in &decl.members {
            if let Some(children) = &member.children {
                for name in children.mentioned() {
                    if !node_sorts.contains(name) {
                        return Err(SortError::UndeclaredSort(name.to_string()));
                    }
                }
            }
        }
    }

    // Port sorts: those used in port positions are auto-declared with a
    // warning; declared-but-unused ones get a warning too.
    let mut used_ports: BTreeSet<String> = BTreeSet::new();
    for decl in &scheme.decls {
        for member in &decl.members {
            for spec in &member.ports {
                used_ports.insert(spec.sort.clone());
                if let Some(peers) = &spec.peers {
                    for name in peers.mentioned() {
                        used_ports.insert(name.to_string());
                    }
                }
            }
        }
    }
    for (name, expr) in &scheme.global_peers {
        used_ports.insert(name.clone());
        for mention in expr.mentioned() {
            used_ports.insert(mention.to_string());
        }
    }
    for name in &used_ports {
        if node_sorts.contains(name.as_str()) {
            return Err(SortError::syntax(
                0,
                format!("{name} is used as a port sort but declared as a node sort"),
            ));
        }
        if !declared_ports.contains(name) {
            scheme
                .warnings
                .push(format!("port sort {name} is used but never declared"));
        }
    }
    for name in declared_ports {
        if !used_ports.contains(name) {
            scheme
                .warnings
                .push(format!("port sort {name} is declared but never used"));
        }
    }

    scheme.port_sorts = declared_ports.union(&used_ports).cloned().collect();
    scheme.index = index;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_member_with_ports_and_children() {
        let scheme = parse_sort_scheme(
            "sort y; sort z;\n\
             sort b = A {y -> z*} x + w | W;\n\
             sort x = T;\n\
             sort w = V;",
        )
        .unwrap();
        assert_eq!(scheme.decls().len(), 3);
        let member = &scheme.decls()[0].members[0];
        assert_eq!(member.control, "A");
        assert_eq!(member.ports.len(), 1);
        assert_eq!(member.ports[0].sort, "y");
        assert!(member.ports[0].peers.is_some());
        assert_eq!(member.children.as_ref().unwrap().to_string(), "x + w");
        // W has no child expression: atomic member.
        assert!(scheme.decls()[0].members[1].children.is_none());
    }

    #[test]
    fn parameter_literals_are_told_apart_from_groups() {
        let scheme = parse_sort_scheme(
            "sort cr = C(1) | C(2);\n\
             sort l = L(\"Ireland\") (cr + 1) \u{d7} cr*;",
        )
        .unwrap();
        let c1 = &scheme.decls()[0].members[0];
        assert_eq!(c1.param, Some(ParamValue::Int(1)));
        assert!(c1.children.is_none());
        let ireland = &scheme.decls()[1].members[0];
        assert_eq!(ireland.param, Some(ParamValue::Str("Ireland".into())));
        assert_eq!(
            ireland.children.as_ref().unwrap().to_string(),
            "(cr + 1) \u{d7} cr*"
        );
    }

    #[test]
    fn double_star_is_rejected() {
        let err = parse_sort_scheme("sort x = A y**;").unwrap_err();
        assert!(matches!(err, SortError::Syntax { .. }), "got {err:?}");
    }

    #[test]
    fn duplicate_membership_is_rejected() {
        let err = parse_sort_scheme("sort a = T; sort b = T;").unwrap_err();
        assert_eq!(
            err,
            SortError::DuplicateControlSort {
                control: "T".into(),
                first: "a".into(),
                second: "b".into(),
            }
        );
    }

    #[test]
    fn undeclared_child_sort_is_rejected() {
        let err = parse_sort_scheme("sort a = T ghost;").unwrap_err();
        assert_eq!(err, SortError::UndeclaredSort("ghost".into()));
    }

    #[test]
    fn auto_declared_port_sorts_warn() {
        let scheme = parse_sort_scheme("sort st; sort a = A {y -> y*};").unwrap();
        let warnings = scheme.warnings().join("\n");
        assert!(warnings.contains("port sort y is used but never declared"));
        assert!(warnings.contains("port sort st is declared but never used"));
        assert!(scheme.port_sorts().contains("y"));
    }

    #[test]
    fn comma_run_of_port_sorts() {
        let scheme = parse_sort_scheme("sort a, sort p, sort et, tp;").unwrap();
        for name in ["a", "p", "et", "tp"] {
            assert!(scheme.port_sorts().contains(name));
        }
    }

    #[test]
    fn global_peer_constraints_parse() {
        let scheme = parse_sort_scheme("sort y -> z \u{d7} z*; sort z;").unwrap();
        assert!(scheme.global_peers.contains_key("y"));
    }
}
