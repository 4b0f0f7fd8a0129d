use std::collections::{BTreeMap, BTreeSet};

use crate::calculus::{
    parse_term_with, parse_type_with, Builtins, ParseError, Resolver, Term, Type, TypingContext,
    BUILTIN_BASE_TYPES,
};

/// Constants with their (closed) types, declared base types and the set of
/// relations that behave as scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub constants: BTreeMap<String, Type>,
    pub base_types: BTreeSet<String>,
    pub scalar_relations: BTreeSet<String>,
}

const BUILTIN_CONSTANTS: [(&str, &str); 11] = [
    ("forall", "Pi a. (a -> t) -> t"),
    ("exists", "Pi a. (a -> t) -> t"),
    ("spec", "Pi a. a"),
    ("tau", "Pi a. (a -> t) -> a"),
    ("eps", "Pi a. (a -> t) -> a"),
    ("and", "t -> t -> t"),
    ("or", "t -> t -> t"),
    ("imp", "t -> t -> t"),
    ("not", "t -> t"),
    ("lt", "float -> float -> t"),
    ("height", "Pi a. a -> float -> t"),
];

pub fn builtin_signature() -> Signature {
    let constants = BUILTIN_CONSTANTS
        .iter()
        .map(|(name, ty)| {
            let ty = parse_type_with(ty, &Builtins).expect("builtin types parse");
            (name.to_string(), ty)
        })
        .collect();
    Signature {
        constants,
        base_types: BUILTIN_BASE_TYPES.iter().map(|s| s.to_string()).collect(),
        scalar_relations: ["height".to_string()].into(),
    }
}

impl Default for Signature {
    fn default() -> Self {
        builtin_signature()
    }
}

impl Signature {
    pub fn is_builtin_constant(name: &str) -> bool {
        BUILTIN_CONSTANTS.iter().any(|(n, _)| *n == name)
    }

    pub fn is_scalar(&self, rel: &str) -> bool {
        self.scalar_relations.contains(rel)
    }

    pub fn constant_type(&self, name: &str) -> Option<&Type> {
        self.constants.get(name)
    }

    pub fn typing_context(&self) -> TypingContext {
        TypingContext {
            base_types: self.base_types.clone(),
            tvars: BTreeSet::new(),
            vars: BTreeMap::new(),
            constants: self.constants.clone(),
        }
    }

    /// Parses a type; undeclared names become type variables.
    pub fn parse_type(&self, text: &str) -> Result<Type, ParseError> {
        parse_type_with(text, self)
    }

    /// Parses a term, rejecting identifiers that are neither bound nor
    /// declared constants.
    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        parse_term_with(text, self)
    }
}

impl Resolver for Signature {
    fn is_base_type(&self, name: &str) -> bool {
        self.base_types.contains(name)
    }

    fn is_constant(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    fn strict(&self) -> bool {
        true
    }
}
