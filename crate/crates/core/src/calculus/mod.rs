//! Second-order λ-calculus: syntax, substitution, typing and β-normalization.

mod alpha;
mod parse;
mod print;
mod reduce;
mod subst;
mod syntax;
mod typing;

pub use alpha::AlphaEq;
pub use parse::{
    parse_annotated_term, parse_term, parse_term_with, parse_type, parse_type_with, Builtins, Names,
    ParseError, ParseErrorKind, Resolver, BUILTIN_BASE_TYPES, RESERVED_CONSTANTS,
};
pub use reduce::{beta_step, beta_step_with, is_normal, normalize, normalize_with, FuelExhausted, Strategy, DEFAULT_FUEL};
pub use subst::{subst_term, SubstType};
pub use syntax::{fresh_name, is_numeral, SpineArg, Term, Type};
pub use typing::{check_type, type_of, TypeError, TypingContext};
