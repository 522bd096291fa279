//! CTL formula parser.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! formula := or ('=>' formula)?            right-associative
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary
//!          | ('A' | 'E') '[' path ']'
//!          | ('X' | 'G' | 'F') unary       only inside A[...]/E[...]
//!          | 'true' | 'false' | ident | '(' formula ')'
//! path    := ('X' | 'G' | 'F') formula
//!          | formula 'U' formula
//! ```
//!
//! Inside `A[...]` or `E[...]`, a bare `X`, `G`, or `F` inherits the
//! enclosing quantifier, so `A[G (p => X q)]` reads `X q` as `A[X q]`.
//! `U` only appears at the top of a bracket. The names `A E X G F U true
//! false` are reserved and cannot be atoms.

use crate::ast::Formula;
use crate::error::SyntaxError;

/// Parse a CTL formula from text.
pub fn parse_formula(input: &str) -> Result<Formula, SyntaxError> {
    let tokens = lex(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: input.len(),
    };
    let formula = p.formula(None)?;
    if let Some((tok, at)) = p.peek() {
        return Err(SyntaxError::new(
            at,
            format!("unexpected `{}` after formula", tok.describe()),
        ));
    }
    Ok(formula)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    A,
    E,
    X,
    G,
    F,
    U,
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::True => "true".into(),
            Tok::False => "false".into(),
            Tok::A => "A".into(),
            Tok::E => "E".into(),
            Tok::X => "X".into(),
            Tok::G => "G".into(),
            Tok::F => "F".into(),
            Tok::U => "U".into(),
            Tok::Bang => "!".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Arrow => "=>".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::LBracket => "[".into(),
            Tok::RBracket => "]".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '!' => {
                out.push((Tok::Bang, i));
                i += 1;
            }
            '&' => {
                out.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                out.push((Tok::Pipe, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '[' => {
                out.push((Tok::LBracket, i));
                i += 1;
            }
            ']' => {
                out.push((Tok::RBracket, i));
                i += 1;
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(SyntaxError::new(i, "expected `=>`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "A" => Tok::A,
                    "E" => Tok::E,
                    "X" => Tok::X,
                    "G" => Tok::G,
                    "F" => Tok::F,
                    "U" => Tok::U,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, start));
            }
            other => {
                return Err(SyntaxError::new(
                    i,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

/// Quantifier context inherited by bare path operators.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Quant {
    All,
    Exists,
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(&Tok, usize)> {
        self.tokens.get(self.pos).map(|(t, at)| (t, *at))
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some((tok, _)) if *tok == want => {
                self.pos += 1;
                Ok(())
            }
            Some((tok, at)) => Err(SyntaxError::new(
                at,
                format!(
                    "expected `{}` {context}, found `{}`",
                    want.describe(),
                    tok.describe()
                ),
            )),
            None => Err(SyntaxError::new(
                self.end,
                format!("expected `{}` {context}", want.describe()),
            )),
        }
    }

    fn formula(&mut self, ctx: Option<Quant>) -> Result<Formula, SyntaxError> {
        let lhs = self.or(ctx)?;
        if let Some((Tok::Arrow, _)) = self.peek() {
            self.pos += 1;
            let rhs = self.formula(ctx)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self, ctx: Option<Quant>) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and(ctx)?;
        while let Some((Tok::Pipe, _)) = self.peek() {
            self.pos += 1;
            let rhs = self.and(ctx)?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self, ctx: Option<Quant>) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary(ctx)?;
        while let Some((Tok::Amp, _)) = self.peek() {
            self.pos += 1;
            let rhs = self.unary(ctx)?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self, ctx: Option<Quant>) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some((Tok::Bang, _)) => {
                self.pos += 1;
                Ok(Formula::negate(self.unary(ctx)?))
            }
            Some((Tok::A, _)) => {
                self.pos += 1;
                self.expect(Tok::LBracket, "after `A`")?;
                let f = self.path(Quant::All)?;
                self.expect(Tok::RBracket, "to close `A[`")?;
                Ok(f)
            }
            Some((Tok::E, _)) => {
                self.pos += 1;
                self.expect(Tok::LBracket, "after `E`")?;
                let f = self.path(Quant::Exists)?;
                self.expect(Tok::RBracket, "to close `E[`")?;
                Ok(f)
            }
            Some((Tok::X | Tok::G | Tok::F, at)) => {
                let (tok, _) = self.bump().expect("peeked");
                match ctx {
                    Some(q) => {
                        let body = self.unary(ctx)?;
                        Ok(apply_path_op(q, &tok, body, None)?)
                    }
                    None => Err(SyntaxError::new(
                        at,
                        format!(
                            "path operator `{}` outside `A[...]` or `E[...]`",
                            tok.describe()
                        ),
                    )),
                }
            }
            _ => self.atomic(ctx),
        }
    }

    fn atomic(&mut self, ctx: Option<Quant>) -> Result<Formula, SyntaxError> {
        match self.bump() {
            Some((Tok::True, _)) => Ok(Formula::True),
            Some((Tok::False, _)) => Ok(Formula::False),
            Some((Tok::Ident(name), _)) => Ok(Formula::Atom(name)),
            Some((Tok::LParen, _)) => {
                let f = self.formula(ctx)?;
                self.expect(Tok::RParen, "to close `(`")?;
                Ok(f)
            }
            Some((tok, at)) => Err(SyntaxError::new(
                at,
                format!("expected a formula, found `{}`", tok.describe()),
            )),
            None => Err(SyntaxError::new(self.end, "expected a formula")),
        }
    }

    /// Body of `A[...]` / `E[...]`: a leading path operator applied to a
    /// formula, or `formula U formula`.
    fn path(&mut self, q: Quant) -> Result<Formula, SyntaxError> {
        if let Some((Tok::X | Tok::G | Tok::F, _)) = self.peek() {
            let (tok, _) = self.bump().expect("peeked");
            let body = self.formula(Some(q))?;
            return apply_path_op(q, &tok, body, None);
        }
        let first = self.formula(Some(q))?;
        match self.peek() {
            Some((Tok::U, _)) => {
                self.pos += 1;
                let second = self.formula(Some(q))?;
                apply_path_op(q, &Tok::U, first, Some(second))
            }
            Some((tok, at)) => Err(SyntaxError::new(
                at,
                format!("expected `U` in path formula, found `{}`", tok.describe()),
            )),
            None => Err(SyntaxError::new(self.end, "expected `U` in path formula")),
        }
    }
}

fn apply_path_op(
    q: Quant,
    op: &Tok,
    first: Formula,
    second: Option<Formula>,
) -> Result<Formula, SyntaxError> {
    let b = Box::new(first);
    Ok(match (q, op) {
        (Quant::All, Tok::X) => Formula::Ax(b),
        (Quant::All, Tok::G) => Formula::Ag(b),
        (Quant::All, Tok::F) => Formula::Af(b),
        (Quant::All, Tok::U) => Formula::Au(b, Box::new(second.expect("U is binary"))),
        (Quant::Exists, Tok::X) => Formula::Ex(b),
        (Quant::Exists, Tok::G) => Formula::Eg(b),
        (Quant::Exists, Tok::F) => Formula::Ef(b),
        (Quant::Exists, Tok::U) => Formula::Eu(b, Box::new(second.expect("U is binary"))),
        _ => unreachable!("not a path operator"),
    })
}
