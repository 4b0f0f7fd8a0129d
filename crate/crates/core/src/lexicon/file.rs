//! Line-oriented lexicon files.
//!
//! ```text
//! type 2yoGirl
//! type human
//! constant h : 2yoGirl -> human
//! scalar weight
//! word Carlotta = Carlotta : 2yoGirl
//!   coercion h : 2yoGirl -> human
//! ```
//!
//! A `word` whose term is a single undeclared identifier declares that
//! identifier as a constant of the annotated type.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::calculus::{
    is_numeral, parse_annotated_term, type_of, AlphaEq, ParseError, ParseErrorKind, Type, RESERVED_CONSTANTS,
};

use super::{builtin_signature, Coercion, LexEntry, Lexicon, LexiconError, Signature};

pub fn load_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let mut loader = Loader { sig: builtin_signature(), entries: BTreeMap::new(), last_word: None };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "type" => loader.declare_type(line, rest)?,
            "constant" => loader.declare_constant(line, rest)?,
            "scalar" => loader.flag_scalar(line, rest)?,
            "word" => loader.word(line, rest)?,
            "coercion" => loader.coercion(line, rest)?,
            other => {
                return Err(LexiconError::Syntax { line, message: format!("unknown directive `{other}`") });
            }
        }
    }
    Ok(Lexicon { signature: loader.sig, entries: loader.entries })
}

/// Renders a lexicon in the file format; `load_lexicon` reads it back.
pub fn print_lexicon(lexicon: &Lexicon) -> String {
    let builtin = builtin_signature();
    let sig = &lexicon.signature;
    let mut out = String::new();
    for ty in sig.base_types.difference(&builtin.base_types) {
        writeln!(out, "type {ty}").unwrap();
    }
    for (name, ty) in &sig.constants {
        if !builtin.constants.contains_key(name) {
            writeln!(out, "constant {name} : {ty}").unwrap();
        }
    }
    for rel in sig.scalar_relations.difference(&builtin.scalar_relations) {
        writeln!(out, "scalar {rel}").unwrap();
    }
    for entry in lexicon.entries.values() {
        writeln!(out, "word {} = {} : {}", entry.word, entry.term, entry.ty).unwrap();
        for c in &entry.coercions {
            writeln!(out, "  coercion {} : {}", c.name, c.ty).unwrap();
        }
    }
    out
}

struct Loader {
    sig: Signature,
    entries: BTreeMap<String, LexEntry>,
    last_word: Option<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphanumeric())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !is_numeral(s)
        && s != "Pi"
}

fn syntax(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Syntax { line, message: message.into() }
}

fn from_parse(line: usize, err: ParseError) -> LexiconError {
    match err.kind {
        ParseErrorKind::UnknownConstant(name) => LexiconError::UnknownConstant { line, name },
        kind => syntax(line, format!("column {}: {kind}", err.col)),
    }
}

impl Loader {
    fn fresh_name(&self, line: usize, name: &str) -> Result<(), LexiconError> {
        if !is_identifier(name) {
            return Err(syntax(line, format!("`{name}` is not an identifier")));
        }
        if RESERVED_CONSTANTS.contains(&name)
            || self.sig.base_types.contains(name)
            || self.sig.constants.contains_key(name)
        {
            return Err(LexiconError::Redeclared { line, name: name.to_string() });
        }
        Ok(())
    }

    /// Parses a type that must be closed: a leftover free type variable is an
    /// undeclared base type.
    fn closed_type(&self, line: usize, text: &str) -> Result<Type, LexiconError> {
        let ty = self.sig.parse_type(text).map_err(|e| from_parse(line, e))?;
        match ty.free_vars().into_iter().next() {
            Some(name) => Err(LexiconError::UnknownBaseType { line, name }),
            None => Ok(ty),
        }
    }

    fn declare_type(&mut self, line: usize, rest: &str) -> Result<(), LexiconError> {
        self.fresh_name(line, rest)?;
        self.sig.base_types.insert(rest.to_string());
        Ok(())
    }

    fn declare_constant(&mut self, line: usize, rest: &str) -> Result<(), LexiconError> {
        let (name, ty) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `constant <name> : <type>`"))?;
        let name = name.trim();
        self.fresh_name(line, name)?;
        let ty = self.closed_type(line, ty)?;
        self.sig.constants.insert(name.to_string(), ty);
        Ok(())
    }

    fn flag_scalar(&mut self, line: usize, name: &str) -> Result<(), LexiconError> {
        let ty = self
            .sig
            .constants
            .get(name)
            .ok_or_else(|| LexiconError::UnknownConstant { line, name: name.to_string() })?;
        let mut body = ty;
        while let Type::Forall(_, b) = body {
            body = b;
        }
        let scalar_shape = matches!(body, Type::Arrow(_, rest)
            if matches!(&**rest, Type::Arrow(num, res) if num.is_base("float") && res.is_base("t")));
        if !scalar_shape {
            return Err(LexiconError::NotScalarShape { line, name: name.to_string(), ty: ty.clone() });
        }
        self.sig.scalar_relations.insert(name.to_string());
        Ok(())
    }

    fn word(&mut self, line: usize, rest: &str) -> Result<(), LexiconError> {
        let (word, rhs) = rest.split_once('=').ok_or_else(|| syntax(line, "expected `word <surface> = <term> : <type>`"))?;
        let word = word.trim();
        if word.is_empty() || word.contains(char::is_whitespace) || word.contains(['(', ')']) {
            return Err(syntax(line, format!("`{word}` is not a valid surface form")));
        }
        if self.entries.contains_key(word) {
            return Err(LexiconError::DuplicateWord { line, word: word.to_string() });
        }

        if let Some((head, annot)) = rhs.split_once(':') {
            let head = head.trim();
            if is_identifier(head) && !self.sig.constants.contains_key(head) {
                self.fresh_name(line, head)?;
                let ty = self.closed_type(line, annot)?;
                self.sig.constants.insert(head.to_string(), ty);
            }
        }

        let (term, declared) = parse_annotated_term(rhs, &self.sig).map_err(|e| from_parse(line, e))?;
        if let Some(name) = declared.free_vars().into_iter().next() {
            return Err(LexiconError::UnknownBaseType { line, name });
        }
        let actual = type_of(&self.sig.typing_context(), &term)
            .map_err(|e| LexiconError::TypeCheckFailure { word: word.to_string(), detail: e.to_string() })?;
        if !actual.alpha_eq(&declared) {
            return Err(LexiconError::TypeCheckFailure {
                word: word.to_string(),
                detail: format!("term has type `{actual}` but is annotated `{declared}`"),
            });
        }
        self.entries.insert(
            word.to_string(),
            LexEntry { word: word.to_string(), term, ty: declared, coercions: Vec::new() },
        );
        self.last_word = Some(word.to_string());
        Ok(())
    }

    fn coercion(&mut self, line: usize, rest: &str) -> Result<(), LexiconError> {
        let word = self.last_word.clone().ok_or(LexiconError::OrphanCoercion { line })?;
        let (name, annot) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `coercion <name> : <type>`"))?;
        let name = name.trim();
        let declared = self
            .sig
            .constants
            .get(name)
            .cloned()
            .ok_or_else(|| LexiconError::UnknownConstant { line, name: name.to_string() })?;
        let annotated = self.closed_type(line, annot)?;
        if !annotated.alpha_eq(&declared) {
            return Err(LexiconError::CoercionTypeMismatch { line, name: name.to_string(), declared, annotated });
        }
        let ground = |t: &Type| !matches!(t, Type::Forall(..)) && t.is_closed();
        match &declared {
            Type::Arrow(d, c) if ground(d) && ground(c) => {}
            _ => return Err(LexiconError::CoercionNotArrow { line, name: name.to_string(), ty: declared }),
        }
        let entry = self.entries.get_mut(&word).expect("last word is registered");
        if entry.coercions.iter().any(|c| c.name == name) {
            return Err(LexiconError::Redeclared { line, name: name.to_string() });
        }
        entry.coercions.push(Coercion {
            name: name.to_string(),
            term: crate::calculus::Term::constant(name),
            ty: declared,
        });
        Ok(())
    }
}
