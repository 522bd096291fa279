//! Lexer and recursive-descent parser for model files.

use std::collections::BTreeSet;

use crate::ast::*;
use crate::error::DslError;

/// Reserved words that cannot name controls, bigraphs, rules, or links.
pub(crate) const KEYWORDS: &[&str] = &[
    "atomic",
    "big",
    "criteria",
    "ctrl",
    "gdpr",
    "id",
    "init",
    "int",
    "pred",
    "priorities",
    "prop",
    "react",
    "sorts",
    "string",
    "use",
];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.binary_search(&s).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Dot,
    DotDot,
    Pipe,
    PipePipe,
    Slash,
    Gt,
    At,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::PipePipe => "`||`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Gt => "`>`".into(),
            Tok::At => "`@`".into(),
            Tok::Arrow => "`-->`".into(),
            Tok::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, line: usize, col: usize, message: impl Into<String>) -> DslError {
        DslError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#`-to-end-of-line comments.
    fn skip_trivia(&mut self) {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, DslError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        let tok = |tok| Token { tok, line, col };
        let c = match self.peek_char() {
            None => return Ok(tok(Tok::Eof)),
            Some(c) => c,
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let start = self.pos;
            while let Some(c) = self.peek_char() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok(tok(Tok::Ident(self.src[start..self.pos].to_string())));
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
            }
            let text = &self.src[start..self.pos];
            let n: i64 = text
                .parse()
                .map_err(|_| self.err(line, col, format!("integer `{text}` is out of range")))?;
            return Ok(tok(Tok::Int(n)));
        }
        if c == '"' {
            self.bump();
            let start = self.pos;
            loop {
                match self.peek_char() {
                    Some('"') => {
                        let text = self.src[start..self.pos].to_string();
                        self.bump();
                        return Ok(tok(Tok::Str(text)));
                    }
                    Some('\n') | None => {
                        return Err(self.err(line, col, "unterminated string literal"));
                    }
                    Some(_) => {
                        self.bump();
                    }
                }
            }
        }
        self.bump();
        let t = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '>' => Tok::Gt,
            '@' => Tok::At,
            '.' => {
                if self.peek_char() == Some('.') {
                    self.bump();
                    Tok::DotDot
                } else {
                    Tok::Dot
                }
            }
            '|' => {
                if self.peek_char() == Some('|') {
                    self.bump();
                    Tok::PipePipe
                } else {
                    Tok::Pipe
                }
            }
            '/' => Tok::Slash,
            '-' => {
                if self.peek_char() == Some('-') {
                    self.bump();
                    if self.peek_char() == Some('>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(self.err(line, col, "expected `-->`"));
                    }
                } else {
                    return Err(self.err(line, col, "expected `-->`"));
                }
            }
            other => {
                return Err(self.err(line, col, format!("unexpected character `{other}`")));
            }
        };
        Ok(tok(t))
    }

    /// Captures raw text from the current position up to the next `;`,
    /// which is consumed. Comments are not interpreted.
    fn raw_until_semi(&mut self) -> Result<String, DslError> {
        let (line, col) = (self.line, self.col);
        let start = self.pos;
        loop {
            match self.peek_char() {
                Some(';') => {
                    let text = self.src[start..self.pos].trim().to_string();
                    self.bump();
                    return Ok(text);
                }
                Some(_) => {
                    self.bump();
                }
                None => return Err(self.err(line, col, "expected `;`")),
            }
        }
    }

    /// Captures the body of a `{ ... }` block, balancing nested braces.
    /// The opening brace must be the next token.
    fn raw_braced_block(&mut self) -> Result<String, DslError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        if self.peek_char() != Some('{') {
            return Err(self.err(line, col, "expected `{`"));
        }
        self.bump();
        let start = self.pos;
        let mut depth = 1usize;
        loop {
            match self.peek_char() {
                Some('{') => {
                    depth += 1;
                    self.bump();
                }
                Some('}') => {
                    depth -= 1;
                    if depth == 0 {
                        let text = self.src[start..self.pos].to_string();
                        self.bump();
                        return Ok(text);
                    }
                    self.bump();
                }
                Some(_) => {
                    self.bump();
                }
                None => return Err(self.err(line, col, "unbalanced `{` in sorts block")),
            }
        }
    }
}

pub(crate) fn parse_text(src: &str) -> Result<ModelFile, DslError> {
    let mut parser = Parser {
        lex: Lexer::new(src),
        peeked: None,
    };
    parser.model()
}

struct Parser<'a> {
    lex: Lexer<'a>,
    peeked: Option<Token>,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Result<Token, DslError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex.next_token(),
        }
    }

    fn peek(&mut self) -> Result<&Tok, DslError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex.next_token()?);
        }
        Ok(&self.peeked.as_ref().unwrap().tok)
    }

    fn err_at(&self, t: &Token, message: impl Into<String>) -> DslError {
        DslError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token, DslError> {
        let t = self.next()?;
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.err_at(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    fn eat(&mut self, want: &Tok) -> Result<bool, DslError> {
        if self.peek()? == want {
            self.next()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Any identifier, keywords included.
    fn ident(&mut self, what: &str) -> Result<(String, Token), DslError> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                Ok((s, t))
            }
            other => Err(self.err_at(&t, format!("expected {what}, found {}", other.describe()))),
        }
    }

    /// An identifier that is required not to be a reserved word.
    fn name(&mut self, what: &str) -> Result<String, DslError> {
        let (s, t) = self.ident(what)?;
        if is_keyword(&s) {
            return Err(self.err_at(&t, format!("`{s}` is a reserved word and cannot be {what}")));
        }
        Ok(s)
    }

    fn int(&mut self, what: &str) -> Result<i64, DslError> {
        let t = self.next()?;
        match t.tok {
            Tok::Int(n) => Ok(n),
            ref other => {
                Err(self.err_at(&t, format!("expected {what}, found {}", other.describe())))
            }
        }
    }

    fn model(&mut self) -> Result<ModelFile, DslError> {
        let mut items = Vec::new();
        let mut rule_names: BTreeSet<String> = BTreeSet::new();
        loop {
            let t = self.next()?;
            let kw = match &t.tok {
                Tok::Eof => break,
                Tok::Ident(s) => s.clone(),
                other => {
                    return Err(self.err_at(
                        &t,
                        format!("expected a statement, found {}", other.describe()),
                    ));
                }
            };
            let item = match kw.as_str() {
                "use" => self.use_item()?,
                "atomic" => {
                    let (next, t2) = self.ident("`ctrl`")?;
                    if next != "ctrl" {
                        return Err(self.err_at(&t2, "expected `ctrl` after `atomic`"));
                    }
                    self.ctrl_item(true)?
                }
                "ctrl" => self.ctrl_item(false)?,
                "big" => self.big_item()?,
                "init" => {
                    let body = self.expr()?;
                    self.expect(Tok::Semi)?;
                    Item::Init(body)
                }
                "react" => {
                    let item = self.react_item()?;
                    if let Item::React(r) = &item {
                        if !rule_names.insert(r.name.clone()) {
                            return Err(DslError::DuplicateRule(r.name.clone()));
                        }
                    }
                    item
                }
                "priorities" => self.priorities_item()?,
                "pred" => self.pred_item()?,
                "prop" => self.prop_item()?,
                "sorts" => {
                    // Raw capture: the block body goes to the sort-scheme
                    // parser untouched.
                    Item::Sorts(self.lex.raw_braced_block()?)
                }
                other => {
                    return Err(self.err_at(&t, format!("expected a statement, found `{other}`")));
                }
            };
            items.push(item);
        }
        Ok(ModelFile { items })
    }

    fn use_item(&mut self) -> Result<Item, DslError> {
        let (pack, _) = self.ident("an import name")?;
        if pack != "gdpr" {
            return Err(DslError::UnknownImport(pack));
        }
        self.expect(Tok::LParen)?;
        let (kw, t) = self.ident("`criteria`")?;
        if kw != "criteria" {
            return Err(self.err_at(&t, "expected `criteria`"));
        }
        self.expect(Tok::Eq)?;
        let lo = self.int("the first criterion")?;
        self.expect(Tok::DotDot)?;
        let hi = self.int("the last criterion")?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        Ok(Item::Use(UseGdpr { lo, hi }))
    }

    fn ctrl_item(&mut self, atomic: bool) -> Result<Item, DslError> {
        let name = self.name("a control name")?;
        let param = if self.eat(&Tok::LParen)? {
            let (kind, t) = self.ident("`int` or `string`")?;
            let param = match kind.as_str() {
                "int" => CtrlParam::Int,
                "string" => CtrlParam::Str,
                _ => return Err(self.err_at(&t, "expected `int` or `string`")),
            };
            self.expect(Tok::RParen)?;
            Some(param)
        } else {
            None
        };
        self.expect(Tok::Eq)?;
        let arity = self.int("an arity")?;
        if arity < 0 {
            return Err(DslError::invalid(format!(
                "control `{name}`: arity cannot be negative"
            )));
        }
        self.expect(Tok::Semi)?;
        Ok(Item::Ctrl(CtrlDecl {
            name,
            atomic,
            param,
            arity: arity as usize,
        }))
    }

    fn big_item(&mut self) -> Result<Item, DslError> {
        let name = self.name("a bigraph name")?;
        self.expect(Tok::Eq)?;
        let body = self.expr()?;
        self.expect(Tok::Semi)?;
        Ok(Item::Big(BigDecl { name, body }))
    }

    fn react_item(&mut self) -> Result<Item, DslError> {
        let name = self.name("a rule name")?;
        self.expect(Tok::Eq)?;
        let redex = self.expr()?;
        self.expect(Tok::Arrow)?;
        let reactum = self.expr()?;
        let eta = if self.eat(&Tok::At)? {
            self.expect(Tok::LBracket)?;
            let mut map = Vec::new();
            if !self.eat(&Tok::RBracket)? {
                loop {
                    let n = self.int("a redex site index")?;
                    if n < 0 {
                        return Err(DslError::invalid(format!(
                            "rule `{name}`: site indices cannot be negative"
                        )));
                    }
                    map.push(n as usize);
                    if !self.eat(&Tok::Comma)? {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
            }
            Some(map)
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        Ok(Item::React(ReactDecl {
            name,
            redex,
            reactum,
            eta,
        }))
    }

    fn priorities_item(&mut self) -> Result<Item, DslError> {
        self.expect(Tok::Eq)?;
        let mut classes = Vec::new();
        loop {
            match self.peek()? {
                Tok::Ident(s) if s == "gdpr" => {
                    self.next()?;
                    classes.push(PriorityClass::Gdpr);
                }
                Tok::LBrace => {
                    self.next()?;
                    let mut rules = Vec::new();
                    loop {
                        rules.push(self.name("a rule name")?);
                        if !self.eat(&Tok::Comma)? {
                            break;
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    classes.push(PriorityClass::Rules(rules));
                }
                _ => {
                    let t = self.next()?;
                    return Err(self.err_at(
                        &t,
                        format!(
                            "expected `gdpr` or a brace-delimited rule class, found {}",
                            t.tok.describe()
                        ),
                    ));
                }
            }
            if !self.eat(&Tok::Gt)? {
                break;
            }
        }
        self.expect(Tok::Semi)?;
        Ok(Item::Priorities(classes))
    }

    fn pred_item(&mut self) -> Result<Item, DslError> {
        let name = self.name("a predicate name")?;
        self.expect(Tok::Eq)?;
        let body = self.expr()?;
        self.expect(Tok::Semi)?;
        Ok(Item::Pred(PredDecl { name, body }))
    }

    fn prop_item(&mut self) -> Result<Item, DslError> {
        let name = self.name("a property name")?;
        self.expect(Tok::Eq)?;
        // Raw capture to the terminating semicolon: the formula grammar is
        // the temporal-logic parser's business, not ours.
        let text = self.lex.raw_until_semi()?;
        Ok(Item::Prop(PropDecl { name, text }))
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut closures = Vec::new();
        while self.eat(&Tok::Slash)? {
            closures.push(self.name("a link name")?);
        }
        // Parenthesized whole expressions: `/e (A || B)`.
        let mut regions = if !closures.is_empty() && *self.peek()? == Tok::LParen {
            self.next()?;
            let mut inner = self.expr()?;
            self.expect(Tok::RParen)?;
            closures.append(&mut inner.closures);
            inner.regions
        } else {
            vec![self.merge()?]
        };
        while self.eat(&Tok::PipePipe)? {
            regions.push(self.merge()?);
        }
        Ok(Expr { closures, regions })
    }

    fn merge(&mut self) -> Result<Vec<ETerm>, DslError> {
        let mut terms = self.factor()?;
        while self.eat(&Tok::Pipe)? {
            terms.extend(self.factor()?);
        }
        Ok(terms)
    }

    /// One merge operand, returned as a term list so groups flatten and the
    /// empty bigraph `1` normalizes away.
    fn factor(&mut self) -> Result<Vec<ETerm>, DslError> {
        let t = self.next()?;
        match &t.tok {
            Tok::LParen => {
                let terms = self.merge()?;
                if *self.peek()? == Tok::PipePipe {
                    let bad = self.next()?;
                    return Err(self.err_at(&bad, "`||` cannot appear inside a group"));
                }
                self.expect(Tok::RParen)?;
                Ok(terms)
            }
            Tok::Int(1) => Ok(Vec::new()),
            Tok::Ident(s) if s == "id" => Ok(vec![ETerm::Site]),
            Tok::Ident(s) if !is_keyword(s) => {
                let name = s.clone();
                self.node(name)
            }
            other => Err(self.err_at(&t, format!("expected a term, found {}", other.describe()))),
        }
    }

    fn node(&mut self, name: String) -> Result<Vec<ETerm>, DslError> {
        let param = if *self.peek()? == Tok::LParen {
            self.next()?;
            let t = self.next()?;
            let v = match &t.tok {
                Tok::Int(n) => PValue::Int(*n),
                Tok::Str(s) => PValue::Str(s.clone()),
                other => {
                    return Err(self.err_at(
                        &t,
                        format!(
                            "expected an integer or string parameter, found {}",
                            other.describe()
                        ),
                    ));
                }
            };
            self.expect(Tok::RParen)?;
            Some(v)
        } else {
            None
        };
        let mut links = Vec::new();
        if self.eat(&Tok::LBrace)? {
            loop {
                links.push(self.name("a link name")?);
                if !self.eat(&Tok::Comma)? {
                    break;
                }
            }
            self.expect(Tok::RBrace)?;
        }
        let children = if self.eat(&Tok::Dot)? {
            if self.eat(&Tok::LParen)? {
                let terms = self.merge()?;
                if *self.peek()? == Tok::PipePipe {
                    let bad = self.next()?;
                    return Err(self.err_at(&bad, "`||` cannot appear inside a group"));
                }
                self.expect(Tok::RParen)?;
                terms
            } else {
                self.factor()?
            }
        } else {
            Vec::new()
        };
        Ok(vec![ETerm::Node {
            name,
            param,
            links,
            children,
        }])
    }
}
