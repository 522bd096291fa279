//! Canonical text form of a parsed model. Reparsing the printed text
//! yields a structurally identical syntax tree.

use std::fmt;

use crate::ast::*;

impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Use(u) => write!(f, "use gdpr(criteria = {}..{});", u.lo, u.hi),
            Item::Ctrl(c) => {
                if c.atomic {
                    write!(f, "atomic ")?;
                }
                write!(f, "ctrl {}", c.name)?;
                match c.param {
                    Some(CtrlParam::Int) => write!(f, "(int)")?,
                    Some(CtrlParam::Str) => write!(f, "(string)")?,
                    None => {}
                }
                write!(f, " = {};", c.arity)
            }
            Item::Big(b) => write!(f, "big {} = {};", b.name, b.body),
            Item::Init(e) => write!(f, "init {e};"),
            Item::React(r) => {
                write!(f, "react {} = {} --> {}", r.name, r.redex, r.reactum)?;
                if let Some(eta) = &r.eta {
                    write!(f, " @ [")?;
                    for (i, n) in eta.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{n}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, ";")
            }
            Item::Priorities(classes) => {
                write!(f, "priorities = ")?;
                for (i, class) in classes.iter().enumerate() {
                    if i > 0 {
                        write!(f, " > ")?;
                    }
                    match class {
                        PriorityClass::Gdpr => write!(f, "gdpr")?,
                        PriorityClass::Rules(names) => {
                            write!(f, "{{")?;
                            for (j, name) in names.iter().enumerate() {
                                if j > 0 {
                                    write!(f, ", ")?;
                                }
                                write!(f, "{name}")?;
                            }
                            write!(f, "}}")?;
                        }
                    }
                }
                write!(f, ";")
            }
            Item::Pred(p) => write!(f, "pred {} = {};", p.name, p.body),
            Item::Prop(p) => write!(f, "prop {} = {};", p.name, p.text),
            Item::Sorts(raw) => write!(f, "sorts {{{raw}}}"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.closures {
            write!(f, "/{name} ")?;
        }
        for (i, region) in self.regions.iter().enumerate() {
            if i > 0 {
                write!(f, " || ")?;
            }
            write_merge(f, region)?;
        }
        Ok(())
    }
}

fn write_merge(f: &mut fmt::Formatter<'_>, terms: &[ETerm]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "1");
    }
    for (i, term) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, " | ")?;
        }
        write!(f, "{term}")?;
    }
    Ok(())
}

impl fmt::Display for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ETerm::Site => write!(f, "id"),
            ETerm::Node {
                name,
                param,
                links,
                children,
            } => {
                write!(f, "{name}")?;
                match param {
                    Some(PValue::Int(n)) => write!(f, "({n})")?,
                    Some(PValue::Str(s)) => write!(f, "(\"{s}\")")?,
                    None => {}
                }
                if !links.is_empty() {
                    write!(f, "{{")?;
                    for (i, l) in links.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{l}")?;
                    }
                    write!(f, "}}")?;
                }
                match children.as_slice() {
                    [] => Ok(()),
                    [only] => write!(f, ".{only}"),
                    many => {
                        write!(f, ".(")?;
                        write_merge(f, many)?;
                        write!(f, ")")
                    }
                }
            }
        }
    }
}
