use std::collections::BTreeSet;
use std::fmt;

/// A CTL state formula.
///
/// Both path quantifiers are kept in the syntax tree as written; the checker
/// reduces universal forms to existential ones internally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// E[X φ]
    Ex(Box<Formula>),
    /// A[X φ]
    Ax(Box<Formula>),
    /// E[F φ]
    Ef(Box<Formula>),
    /// A[F φ]
    Af(Box<Formula>),
    /// E[G φ]
    Eg(Box<Formula>),
    /// A[G φ]
    Ag(Box<Formula>),
    /// E[φ U ψ]
    Eu(Box<Formula>, Box<Formula>),
    /// A[φ U ψ]
    Au(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn ag(f: Formula) -> Formula {
        Formula::Ag(Box::new(f))
    }

    pub fn ax(f: Formula) -> Formula {
        Formula::Ax(Box::new(f))
    }

    /// Every atom mentioned in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::Not(f)
            | Formula::Ex(f)
            | Formula::Ax(f)
            | Formula::Ef(f)
            | Formula::Af(f)
            | Formula::Eg(f)
            | Formula::Ag(f) => f.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Eu(a, b)
            | Formula::Au(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Whether the formula is purely propositional (no temporal operators).
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            _ => false,
        }
    }
}

/// Precedence levels for printing: higher binds tighter.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(f: &mut fmt::Formatter<'_>, outer: u8, inner: &Formula) -> fmt::Result {
            if precedence(inner) < outer {
                write!(f, "({inner})")
            } else {
                write!(f, "{inner}")
            }
        }
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                write!(f, "!")?;
                wrap(f, 4, inner)
            }
            Formula::And(a, b) => {
                wrap(f, 3, a)?;
                write!(f, " & ")?;
                wrap(f, 3, b)
            }
            Formula::Or(a, b) => {
                wrap(f, 2, a)?;
                write!(f, " | ")?;
                wrap(f, 2, b)
            }
            Formula::Implies(a, b) => {
                // Right-associative: parenthesize a left operand of equal
                // precedence.
                if precedence(a) <= 1 {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " => {b}")
            }
            Formula::Ex(p) => write!(f, "E[X {p}]"),
            Formula::Ax(p) => write!(f, "A[X {p}]"),
            Formula::Ef(p) => write!(f, "E[F {p}]"),
            Formula::Af(p) => write!(f, "A[F {p}]"),
            Formula::Eg(p) => write!(f, "E[G {p}]"),
            Formula::Ag(p) => write!(f, "A[G {p}]"),
            Formula::Eu(a, b) => write!(f, "E[{a} U {b}]"),
            Formula::Au(a, b) => write!(f, "A[{a} U {b}]"),
        }
    }
}
