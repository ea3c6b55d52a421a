//! Formula syntax: the free algebra over variables, a parser and a printer.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! imp  := res ("->" imp)?                 right associative
//! res  := or (("\" | "/") or)?            non-associative
//! or   := mul ("|" mul)*                  left associative
//! mul  := atom (("*" | "&") atom)*        left associative
//! atom := ident | "top" | "bot" | "(" imp ")"
//! ```
//!
//! `l \ r` is `l ⊸L r` and `r / l` is `l ⊸R r`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
    Tensor,
    LImp,
    RImp,
}

impl Connective {
    pub const ALL: [Connective; 6] = [
        Connective::And,
        Connective::Or,
        Connective::Imp,
        Connective::Tensor,
        Connective::LImp,
        Connective::RImp,
    ];

    /// Mathematical symbol, used in error messages.
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "∧",
            Connective::Or => "∨",
            Connective::Imp => "⇒",
            Connective::Tensor => "⊗",
            Connective::LImp => "⊸L",
            Connective::RImp => "⊸R",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Connective::Imp => 0,
            Connective::LImp | Connective::RImp => 1,
            Connective::Or => 2,
            Connective::And | Connective::Tensor => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    /// `Binary(c, l, r)`; for the residuals `l` is the argument and `r` the
    /// result, so `Binary(LImp, l, r)` is `l ⊸L r`.
    Binary(Connective, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn binary(c: Connective, l: Formula, r: Formula) -> Formula {
        Formula::Binary(c, Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::And, l, r)
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Or, l, r)
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Imp, l, r)
    }

    pub fn tensor(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::Tensor, l, r)
    }

    pub fn limp(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::LImp, l, r)
    }

    pub fn rimp(l: Formula, r: Formula) -> Formula {
        Formula::binary(Connective::RImp, l, r)
    }

    /// An atom has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
            _ => 1,
        }
    }

    /// Replaces every connective by `map(c)`.
    pub fn map_connectives(&self, map: &impl Fn(Connective) -> Connective) -> Formula {
        match self {
            Formula::Binary(c, l, r) => {
                Formula::binary(map(*c), l.map_connectives(map), r.map_connectives(map))
            }
            atom => atom.clone(),
        }
    }
}

/// Connective sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// `⊤, ⊥, ∧, ∨, ⇒`.
    Prop,
    /// `⊗, ⊸L, ⊸R`.
    Lambek,
    /// Everything.
    Full,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Prop => "prop",
            Dialect::Lambek => "lambek",
            Dialect::Full => "full",
        }
    }

    pub fn allows(self, c: Connective) -> bool {
        match self {
            Dialect::Prop => matches!(c, Connective::And | Connective::Or | Connective::Imp),
            Dialect::Lambek => matches!(c, Connective::Tensor | Connective::LImp | Connective::RImp),
            Dialect::Full => true,
        }
    }

    pub fn allows_constants(self) -> bool {
        self != Dialect::Lambek
    }

    /// The first connective outside the dialect, in prefix order.
    pub fn check(self, f: &Formula) -> Result<()> {
        let err = |connective| Error::Dialect {
            connective,
            dialect: self.name(),
        };
        match f {
            Formula::Var(_) => Ok(()),
            Formula::Top if !self.allows_constants() => Err(err("⊤")),
            Formula::Bot if !self.allows_constants() => Err(err("⊥")),
            Formula::Top | Formula::Bot => Ok(()),
            Formula::Binary(c, l, r) => {
                if !self.allows(*c) {
                    return Err(err(c.symbol()));
                }
                self.check(l)?;
                self.check(r)
            }
        }
    }
}

impl std::str::FromStr for Dialect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dialect> {
        match s {
            "prop" => Ok(Dialect::Prop),
            "lambek" => Ok(Dialect::Lambek),
            "full" => Ok(Dialect::Full),
            other => Err(Error::InvalidInput(format!("unknown dialect `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top,
    Bot,
    Op(Connective),
    Open,
    Close,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
}

impl Lexer<'_> {
    /// The next token and its byte offset.
    fn next_token(&mut self) -> Result<(Token, usize)> {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
        let Some((pos, c)) = self.chars.next() else {
            return Ok((Token::End, self.len));
        };
        let tok = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            '*' => Token::Op(Connective::Tensor),
            '&' => Token::Op(Connective::And),
            '|' => Token::Op(Connective::Or),
            '\\' => Token::Op(Connective::LImp),
            '/' => Token::Op(Connective::RImp),
            '-' => {
                if self.chars.next_if(|(_, c)| *c == '>').is_none() {
                    return Err(syntax(pos, "expected `->`"));
                }
                Token::Op(Connective::Imp)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::from(c);
                while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_alphanumeric() || *c == '_') {
                    name.push(c);
                }
                match name.as_str() {
                    "top" => Token::Top,
                    "bot" => Token::Bot,
                    _ => Token::Ident(name),
                }
            }
            other => return Err(syntax(pos, &format!("unexpected character `{other}`"))),
        };
        Ok((tok, pos))
    }
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Syntax {
        position,
        message: message.to_string(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Token,
    pos: usize,
}

impl Parser<'_> {
    fn advance(&mut self) -> Result<()> {
        (self.tok, self.pos) = self.lexer.next_token()?;
        Ok(())
    }

    fn imp(&mut self) -> Result<Formula> {
        let l = self.res()?;
        if self.tok == Token::Op(Connective::Imp) {
            self.advance()?;
            return Ok(Formula::imp(l, self.imp()?));
        }
        Ok(l)
    }

    fn res(&mut self) -> Result<Formula> {
        let l = self.or()?;
        let c = match self.tok {
            Token::Op(c @ (Connective::LImp | Connective::RImp)) => c,
            _ => return Ok(l),
        };
        self.advance()?;
        let r = self.or()?;
        if let Token::Op(Connective::LImp | Connective::RImp) = self.tok {
            return Err(syntax(
                self.pos,
                "residuals are non-associative; add parentheses",
            ));
        }
        Ok(match c {
            Connective::LImp => Formula::limp(l, r),
            // `r / l` is `l ⊸R r`
            _ => Formula::rimp(r, l),
        })
    }

    fn or(&mut self) -> Result<Formula> {
        let mut l = self.mul()?;
        while self.tok == Token::Op(Connective::Or) {
            self.advance()?;
            l = Formula::or(l, self.mul()?);
        }
        Ok(l)
    }

    fn mul(&mut self) -> Result<Formula> {
        let mut l = self.atom()?;
        while let Token::Op(c @ (Connective::And | Connective::Tensor)) = self.tok {
            self.advance()?;
            l = Formula::binary(c, l, self.atom()?);
        }
        Ok(l)
    }

    fn atom(&mut self) -> Result<Formula> {
        let f = match std::mem::replace(&mut self.tok, Token::End) {
            Token::Ident(name) => Formula::Var(name),
            Token::Top => Formula::Top,
            Token::Bot => Formula::Bot,
            Token::Open => {
                self.advance()?;
                let inner = self.imp()?;
                if self.tok != Token::Close {
                    return Err(syntax(self.pos, "expected `)`"));
                }
                inner
            }
            Token::End => return Err(syntax(self.pos, "unexpected end of input")),
            Token::Close => return Err(syntax(self.pos, "unexpected `)`")),
            Token::Op(_) => return Err(syntax(self.pos, "expected a formula")),
        };
        self.advance()?;
        Ok(f)
    }
}

/// Parses `text` and checks it against `dialect`. Positions are byte offsets.
pub fn parse(text: &str, dialect: Dialect) -> Result<Formula> {
    let mut parser = Parser {
        lexer: Lexer {
            chars: text.char_indices().peekable(),
            len: text.len(),
        },
        tok: Token::End,
        pos: 0,
    };
    parser.advance()?;
    let f = parser.imp()?;
    if parser.tok != Token::End {
        return Err(syntax(parser.pos, "unexpected trailing input"));
    }
    dialect.check(&f)?;
    Ok(f)
}

/// Canonical text with minimal parentheses.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0);
    out
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let Formula::Binary(c, l, r) = f else {
        match f {
            Formula::Var(name) => out.push_str(name),
            Formula::Top => out.push_str("top"),
            Formula::Bot => out.push_str("bot"),
            Formula::Binary(..) => unreachable!(),
        }
        return;
    };
    let prec = c.precedence();
    let wrap = prec < min;
    if wrap {
        out.push('(');
    }
    // (left operand, operator, right operand, their minimum precedences)
    let (first, op, second, p1, p2) = match c {
        Connective::Imp => (l, "->", r, 1, 0),
        Connective::LImp => (l, "\\", r, 2, 2),
        Connective::RImp => (r, "/", l, 2, 2),
        Connective::Or => (l, "|", r, 2, 3),
        Connective::And => (l, "&", r, 3, 4),
        Connective::Tensor => (l, "*", r, 3, 4),
    };
    write_formula(out, first, p1);
    out.push(' ');
    out.push_str(op);
    out.push(' ');
    write_formula(out, second, p2);
    if wrap {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// An algebra for the formula signature.
pub trait Algebra {
    type Value;

    fn var(&self, name: &str) -> Result<Self::Value>;
    fn top(&self) -> Result<Self::Value>;
    fn bot(&self) -> Result<Self::Value>;
    fn binary(&self, c: Connective, l: Self::Value, r: Self::Value) -> Result<Self::Value>;
}

/// The unique algebra morphism out of the syntax.
pub fn fold<A: Algebra>(f: &Formula, alg: &A) -> Result<A::Value> {
    match f {
        Formula::Var(name) => alg.var(name),
        Formula::Top => alg.top(),
        Formula::Bot => alg.bot(),
        Formula::Binary(c, l, r) => {
            let l = fold(l, alg)?;
            let r = fold(r, alg)?;
            alg.binary(*c, l, r)
        }
    }
}

/// Every formula of depth at most `depth` over `vars`, using the constants
/// and connectives of `dialect`. Atoms come first, then binary formulas by
/// connective and operands.
pub fn formulas_up_to_depth(vars: &[&str], depth: usize, dialect: Dialect) -> Vec<Formula> {
    if depth == 0 {
        return Vec::new();
    }
    let mut atoms: Vec<Formula> = vars.iter().map(|v| Formula::var(v)).collect();
    if dialect.allows_constants() {
        atoms.extend([Formula::Top, Formula::Bot]);
    }
    let mut all = atoms.clone();
    for _ in 1..depth {
        let mut next = atoms.clone();
        for c in Connective::ALL.into_iter().filter(|&c| dialect.allows(c)) {
            for l in &all {
                for r in &all {
                    next.push(Formula::binary(c, l.clone(), r.clone()));
                }
            }
        }
        all = next;
    }
    all
}
