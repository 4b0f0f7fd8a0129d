//! Concrete syntax for types and terms.
//!
//! ```text
//! Type ::= Ident | Type "->" Type | "Pi" Ident "." Type | "(" Type ")"
//! Term ::= Ident | Term Term | "\" Ident ":" Type "." Term
//!        | "/\" Ident "." Term | Term "{" Type "}" | "(" Term ")"
//! ```
//!
//! Arrows associate to the right, application to the left, and `{T}` binds
//! tighter than application. `λ`, `Λ`, `Π` and `→` are accepted as aliases.
//! Numerals (`95`, `1.5`) are constants of type `float`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::syntax::{is_numeral, Term, Type};

/// Names that may never be bound or redeclared.
pub const RESERVED_CONSTANTS: [&str; 11] =
    ["forall", "exists", "spec", "tau", "eps", "and", "or", "imp", "not", "lt", "height"];

pub const BUILTIN_BASE_TYPES: [&str; 2] = ["t", "float"];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: String },
    #[error("unexpected character `{0}`")]
    BadChar(char),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("reserved word `{0}` used as identifier")]
    Reserved(String),
    #[error("type variable `{0}` clashes with a declared base type")]
    AmbiguousTypeName(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
}

/// Decides how free identifiers resolve.
pub trait Resolver {
    fn is_base_type(&self, name: &str) -> bool;
    fn is_constant(&self, name: &str) -> bool;
    /// When true, an identifier that is neither bound nor a constant is an
    /// error instead of a free variable.
    fn strict(&self) -> bool {
        false
    }
}

/// Lenient resolution against the builtin names only: `t` and `float` are
/// base types, the reserved constants are constants, every other free name
/// is a variable.
#[derive(Clone, Copy, Debug, Default)]
pub struct Builtins;

impl Resolver for Builtins {
    fn is_base_type(&self, name: &str) -> bool {
        BUILTIN_BASE_TYPES.contains(&name)
    }

    fn is_constant(&self, name: &str) -> bool {
        RESERVED_CONSTANTS.contains(&name)
    }
}

/// Explicit name sets, lenient about free variables.
#[derive(Clone, Debug, Default)]
pub struct Names {
    pub base_types: BTreeSet<String>,
    pub constants: BTreeSet<String>,
}

impl Resolver for Names {
    fn is_base_type(&self, name: &str) -> bool {
        self.base_types.contains(name)
    }

    fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }
}

pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    parse_type_with(text, &Builtins)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, &Builtins)
}

pub fn parse_type_with(text: &str, names: &dyn Resolver) -> Result<Type, ParseError> {
    let mut p = Parser::new(text, names)?;
    let ty = p.ty()?;
    p.finish()?;
    Ok(ty)
}

pub fn parse_term_with(text: &str, names: &dyn Resolver) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, names)?;
    let u = p.term()?;
    p.finish()?;
    Ok(u)
}

/// Parses `<Term> : <Type>`, the shape of a lexicon `word` right-hand side.
pub fn parse_annotated_term(text: &str, names: &dyn Resolver) -> Result<(Term, Type), ParseError> {
    let mut p = Parser::new(text, names)?;
    let u = p.term()?;
    p.expect(&Tok::Colon, "`:` and a type annotation")?;
    let ty = p.ty()?;
    p.finish()?;
    Ok((u, ty))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Pi,
    Arrow,
    Lambda,
    BigLambda,
    Dot,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Num(s) => write!(f, "numeral `{s}`"),
            Tok::Pi => f.write_str("`Pi`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Lambda => f.write_str("`\\`"),
            Tok::BigLambda => f.write_str("`/\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut depth: i64 = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let err = |kind| ParseError { line: l0, col: c0, kind };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '→' => (Tok::Arrow, 1),
            '/' if chars.get(i + 1) == Some(&'\\') => (Tok::BigLambda, 2),
            'Λ' => (Tok::BigLambda, 1),
            '\\' | 'λ' => (Tok::Lambda, 1),
            'Π' => (Tok::Pi, 1),
            '.' => (Tok::Dot, 1),
            ':' => (Tok::Colon, 1),
            '(' => {
                depth += 1;
                (Tok::LParen, 1)
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(ParseErrorKind::Unbalanced));
                }
                (Tok::RParen, 1)
            }
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            c if is_ident_char(c) && c != '_' && c != '\'' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let mut word: String = chars[i..j].iter().collect();
                if word.bytes().all(|b| b.is_ascii_digit())
                    && chars.get(j) == Some(&'.')
                    && chars.get(j + 1).is_some_and(|d| d.is_ascii_digit())
                {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    word = chars[i..k].iter().collect();
                    j = k;
                }
                let tok = if is_numeral(&word) {
                    Tok::Num(word)
                } else if word == "Pi" {
                    Tok::Pi
                } else {
                    Tok::Ident(word)
                };
                (tok, j - i)
            }
            other => return Err(err(ParseErrorKind::BadChar(other))),
        };
        out.push(Spanned { tok, line: l0, col: c0 });
        i += len;
        col += len;
    }
    if depth != 0 {
        return Err(ParseError { line, col, kind: ParseErrorKind::Unbalanced });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: &'a dyn Resolver,
    term_scope: Vec<String>,
    type_scope: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a dyn Resolver) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0, names, term_scope: Vec::new(), type_scope: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError { line: s.line, col: s.col, kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::Unexpected {
            found: self.peek().to_string(),
            expected: expected.to_string(),
        })
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            Tok::RParen => Err(self.error_here(ParseErrorKind::Unbalanced)),
            _ => Err(self.unexpected("end of input")),
        }
    }

    fn binder(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                if RESERVED_CONSTANTS.contains(&name.as_str()) {
                    return Err(self.error_here(ParseErrorKind::Reserved(name)));
                }
                self.bump();
                Ok(name)
            }
            Tok::Pi => Err(self.error_here(ParseErrorKind::Reserved("Pi".into()))),
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn type_binder(&mut self) -> Result<String, ParseError> {
        let name = self.binder()?;
        if self.names.is_base_type(&name) {
            self.pos -= 1;
            return Err(self.error_here(ParseErrorKind::AmbiguousTypeName(name)));
        }
        Ok(name)
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        if self.peek() == &Tok::Pi {
            self.bump();
            let a = self.type_binder()?;
            self.expect(&Tok::Dot, "`.` after the Pi binder")?;
            self.type_scope.push(a.clone());
            let body = self.ty();
            self.type_scope.pop();
            return Ok(Type::forall(a, body?));
        }
        let dom = self.ty_atom()?;
        if self.peek() == &Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            return Ok(Type::arrow(dom, cod));
        }
        Ok(dom)
    }

    fn ty_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if self.type_scope.contains(&name) || !self.names.is_base_type(&name) {
                    Ok(Type::Var(name))
                } else {
                    Ok(Type::Base(name))
                }
            }
            Tok::LParen => {
                self.bump();
                let ty = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(ty)
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Lambda | Tok::BigLambda => self.binder_term(),
            _ => self.application(),
        }
    }

    fn binder_term(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Tok::Lambda => {
                let x = self.binder()?;
                self.expect(&Tok::Colon, "`:` and the binder's type")?;
                let ty = self.ty()?;
                self.expect(&Tok::Dot, "`.` before the body")?;
                self.term_scope.push(x.clone());
                let body = self.term();
                self.term_scope.pop();
                Ok(Term::lam(x, ty, body?))
            }
            Tok::BigLambda => {
                let a = self.type_binder()?;
                self.expect(&Tok::Dot, "`.` before the body")?;
                self.type_scope.push(a.clone());
                let body = self.term();
                self.type_scope.pop();
                Ok(Term::ty_lam(a, body?))
            }
            _ => unreachable!("binder_term called off a binder token"),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Num(_) | Tok::LParen)
    }

    fn application(&mut self) -> Result<Term, ParseError> {
        if !self.starts_atom() {
            return Err(self.unexpected("a term"));
        }
        let mut acc = self.postfix()?;
        loop {
            if self.starts_atom() {
                let arg = self.postfix()?;
                acc = Term::app(acc, arg);
            } else if matches!(self.peek(), Tok::Lambda | Tok::BigLambda) {
                // a trailing binder extends to the end and is the last argument
                let arg = self.binder_term()?;
                return Ok(Term::app(acc, arg));
            } else {
                return Ok(acc);
            }
        }
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == &Tok::LBrace {
            self.bump();
            let ty = self.ty()?;
            self.expect(&Tok::RBrace, "`}`")?;
            acc = Term::ty_app(acc, ty);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                if self.term_scope.contains(&name) {
                    self.bump();
                    Ok(Term::Var(name))
                } else if self.names.is_constant(&name) {
                    self.bump();
                    Ok(Term::Const(name))
                } else if self.names.strict() {
                    Err(self.error_here(ParseErrorKind::UnknownConstant(name)))
                } else {
                    self.bump();
                    Ok(Term::Var(name))
                }
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Term::Const(n))
            }
            Tok::LParen => {
                self.bump();
                let u = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(u)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}
