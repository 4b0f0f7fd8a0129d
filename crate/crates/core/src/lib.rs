//! Typed semantic composition with a specimen ("most of") operator.
//!
//! * [`calculus`]: System F terms and types, typing, β-normalization.
//! * [`lexicon`]: signatures, lexicon files, optional coercions.
//! * [`composer`]: every well-typed reading of a syntax tree.
//! * [`logic`]: formulae, finite weighted models, specimen judgements.

pub mod calculus;
pub mod lexicon;
pub mod composer;
pub mod logic;
