//! Syntax tree of a model file, as produced by the parser and consumed
//! by the resolver and the pretty-printer.

/// A parsed model file: its statements in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    /// `use gdpr(criteria = 1..3);`
    Use(UseGdpr),
    /// `ctrl Name = 2;`, `atomic ctrl C(int) = 0;`
    Ctrl(CtrlDecl),
    /// `big name = expr;`
    Big(BigDecl),
    /// `init expr;`
    Init(Expr),
    /// `react name = redex --> reactum @ [0, 1];`
    React(ReactDecl),
    /// `priorities = gdpr > {a, b} > {c};`
    Priorities(Vec<PriorityClass>),
    /// `pred name = expr;`
    Pred(PredDecl),
    /// `prop name = A[G ...];`
    Prop(PropDecl),
    /// `sorts { ... }`, kept verbatim for the sort-scheme parser.
    Sorts(String),
}

/// Import of the privacy pack over an inclusive criteria range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UseGdpr {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtrlParam {
    Int,
    Str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtrlDecl {
    pub name: String,
    pub atomic: bool,
    pub param: Option<CtrlParam>,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigDecl {
    pub name: String,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactDecl {
    pub name: String,
    pub redex: Expr,
    pub reactum: Expr,
    /// `eta[i]` is the redex site filling reactum site `i`; `None` means
    /// the identity map.
    pub eta: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriorityClass {
    /// The `gdpr` splice: the pack's classes, in pack order.
    Gdpr,
    /// An explicit class of rule names.
    Rules(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredDecl {
    pub name: String,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropDecl {
    pub name: String,
    /// Raw formula text, handed to the formula parser at resolution.
    pub text: String,
}

/// A bigraph expression: names closed over the whole expression, and the
/// parallel regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub closures: Vec<String>,
    pub regions: Vec<Vec<ETerm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ETerm {
    /// `id`: a site, numbered by order of appearance in the expression.
    Site,
    /// A control occurrence or a splice of a named bigraph.
    Node {
        name: String,
        param: Option<PValue>,
        links: Vec<String>,
        children: Vec<ETerm>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PValue {
    Int(i64),
    Str(String),
}
