use std::collections::BTreeMap;
use std::fmt;

use crate::error::BuildError;

/// Parameter carried by a control instance, e.g. `L("Ireland")` or `C(2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamValue {
    Int(i64),
    Str(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Str(s) => write!(f, "{s:?}"),
        }
    }
}

/// A control instance: family name, optional parameter, arity, atomicity.
///
/// Two nodes have "the same control" only when name and parameter both agree;
/// `C(1)` and `C(2)` never match each other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Control {
    pub name: String,
    pub param: Option<ParamValue>,
    pub arity: usize,
    pub atomic: bool,
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if let Some(p) = &self.param {
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

/// Declared signature of a control family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlDecl {
    pub name: String,
    pub arity: usize,
    pub atomic: bool,
}

/// The signature of a model: every control family that may appear in a bigraph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ControlTable {
    decls: BTreeMap<String, ControlDecl>,
}

impl ControlTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declare a control family. Re-declaring with an identical signature is a
    /// no-op; a conflicting signature is an error.
    pub fn declare(&mut self, name: &str, arity: usize, atomic: bool) -> Result<(), BuildError> {
        let decl = ControlDecl {
            name: name.to_string(),
            arity,
            atomic,
        };
        match self.decls.get(name) {
            Some(existing) if *existing != decl => {
                Err(BuildError::ConflictingControl(name.to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.decls.insert(name.to_string(), decl);
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&ControlDecl> {
        self.decls.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.decls.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ControlDecl> {
        self.decls.values()
    }

    /// Build a control instance for a declared family.
    pub fn instantiate(
        &self,
        name: &str,
        param: Option<ParamValue>,
    ) -> Result<Control, BuildError> {
        let decl = self
            .decls
            .get(name)
            .ok_or_else(|| BuildError::UnknownControl(name.to_string()))?;
        Ok(Control {
            name: decl.name.clone(),
            param,
            arity: decl.arity,
            atomic: decl.atomic,
        })
    }

    /// Merge another table into this one; conflicting signatures are errors.
    pub fn merge(&mut self, other: &ControlTable) -> Result<(), BuildError> {
        for decl in other.iter() {
            self.declare(&decl.name, decl.arity, decl.atomic)?;
        }
        Ok(())
    }
}
