//! Lexical entries: each word has a main typed term and a finite list of
//! optional coercion terms that may convert its type during composition.

mod file;
mod signature;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::calculus::{AlphaEq, Term, Type};

pub use file::{load_lexicon, print_lexicon};
pub use signature::{builtin_signature, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coercion {
    pub name: String,
    pub term: Term,
    pub ty: Type,
}

impl Coercion {
    /// `(domain, codomain)`; coercions are validated to be arrows.
    pub fn endpoints(&self) -> (&Type, &Type) {
        match &self.ty {
            Type::Arrow(d, c) => (d, c),
            other => unreachable!("coercion `{}` has non-arrow type `{other}`", self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    pub term: Term,
    pub ty: Type,
    pub coercions: Vec<Coercion>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    pub signature: Signature,
    pub entries: BTreeMap<String, LexEntry>,
}

impl Lexicon {
    pub fn entry(&self, word: &str) -> Option<&LexEntry> {
        self.entries.get(word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("word `{word}` does not type-check: {detail}")]
    TypeCheckFailure { word: String, detail: String },
    #[error("line {line}: word `{word}` is defined twice")]
    DuplicateWord { line: usize, word: String },
    #[error("line {line}: unknown base type `{name}`")]
    UnknownBaseType { line: usize, name: String },
    #[error("line {line}: `{name}` is already declared")]
    Redeclared { line: usize, name: String },
    #[error("line {line}: unknown constant `{name}`")]
    UnknownConstant { line: usize, name: String },
    #[error("line {line}: coercion `{name}` must have an arrow type between ground types, found `{ty}`")]
    CoercionNotArrow { line: usize, name: String, ty: Type },
    #[error("line {line}: coercion `{name}` is declared `{declared}` but annotated `{annotated}`")]
    CoercionTypeMismatch { line: usize, name: String, declared: Type, annotated: Type },
    #[error("line {line}: coercion without a preceding word")]
    OrphanCoercion { line: usize },
    #[error("line {line}: scalar relation `{name}` must have type `X -> float -> t`, found `{ty}`")]
    NotScalarShape { line: usize, name: String, ty: Type },
}

/// A way of presenting an entry: its main term, possibly wrapped in
/// coercions (innermost first in `path`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub term: Term,
    pub ty: Type,
    pub path: Vec<String>,
}

impl Candidate {
    pub fn coercion_count(&self) -> usize {
        self.path.len()
    }
}

/// The entry's main term closed under up to `depth` applications of its
/// coercions. The uncoerced candidate comes first; the rest are ordered by
/// coercion count, then by coercion names.
pub fn coercion_candidates(entry: &LexEntry, depth: usize) -> Vec<Candidate> {
    let mut coercions: Vec<&Coercion> = entry.coercions.iter().collect();
    coercions.sort_by(|a, b| a.name.cmp(&b.name));

    let mut all = vec![Candidate { term: entry.term.clone(), ty: entry.ty.clone(), path: Vec::new() }];
    let mut frontier = all.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for cand in &frontier {
            for c in &coercions {
                let (dom, cod) = c.endpoints();
                if !dom.alpha_eq(&cand.ty) {
                    continue;
                }
                let term = Term::app(c.term.clone(), cand.term.clone());
                if all.iter().chain(&next).any(|k: &Candidate| k.term.alpha_eq(&term)) {
                    continue;
                }
                let mut path = cand.path.clone();
                path.push(c.name.clone());
                next.push(Candidate { term, ty: cod.clone(), path });
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| a.path.len().cmp(&b.path.len()).then_with(|| a.path.cmp(&b.path)));
    all
}
