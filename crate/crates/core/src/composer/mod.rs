//! Composition of lexical terms along a syntax tree into readings.
//!
//! Candidates are computed bottom-up. A leaf offers its entry's term and its
//! coerced variants (function heads are never coerced). At a node, each
//! function candidate whose type starts with `Pi` is specialized at every
//! type from the instantiation universe, then applied to every argument
//! candidate of matching domain type.
//!
//! The instantiation universe at a node is the set of closed types occurring
//! in the types of the argument candidates on the head's spine: the node's
//! own argument and every argument the result will later be applied to. This
//! is what lets `love : Pi a. Pi b. a -> b -> t` pick `b := country` before
//! `France` has been consumed.

mod tree;

use thiserror::Error;

use crate::calculus::{normalize, AlphaEq, FuelExhausted, SubstType, Term, Type, DEFAULT_FUEL};
use crate::lexicon::{coercion_candidates, Lexicon};

pub use tree::{parse_tree, SyntaxTree, TreeParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComposeOptions {
    /// Coercions that may be stacked on a single word.
    pub max_coercions: usize,
    pub max_readings: usize,
    pub fuel: usize,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        ComposeOptions { max_coercions: 2, max_readings: 64, fuel: DEFAULT_FUEL }
    }
}

/// One Π-binder specialized during composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instantiation {
    /// The word (or subtree) whose type carried the binder.
    pub head: String,
    pub binder: String,
    pub ty: Type,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reading {
    /// Closed β-normal term of type `t`.
    pub term: Term,
    pub raw_term: Term,
    /// `(word, coercion)` pairs, innermost coercion first within a word.
    pub coercions_used: Vec<(String, String)>,
    pub instantiations: Vec<Instantiation>,
    pub cost: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Readings {
    pub readings: Vec<Reading>,
    /// Distinct readings found before truncation at `max_readings`.
    pub total: usize,
}

impl Readings {
    pub fn truncated(&self) -> bool {
        self.total > self.readings.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("word `{0}` is not in the lexicon")]
    LeafNotInLexicon(String),
    #[error("no reading: {}", .failures.join("; "))]
    NoReading { failures: Vec<String> },
    #[error(transparent)]
    Normalization(#[from] FuelExhausted),
}

pub fn enumerate_readings(
    tree: &SyntaxTree,
    lexicon: &Lexicon,
    opts: &ComposeOptions,
) -> Result<Readings, ComposeError> {
    let mut composer = Composer { lexicon, opts, failures: Vec::new() };
    let roots = composer.candidates(tree, &[], false)?;
    let prop = Type::prop();

    let mut found = Vec::new();
    for cand in roots.iter().filter(|c| c.ty.alpha_eq(&prop)) {
        let term = normalize(&cand.term, opts.fuel)?;
        let key = (cand.coercions.len(), term.to_string(), cand.term.to_string());
        found.push((
            key,
            Reading {
                term,
                raw_term: cand.term.clone(),
                coercions_used: cand.coercions.clone(),
                instantiations: cand.instantiations.clone(),
                cost: cand.coercions.len(),
            },
        ));
    }
    if found.is_empty() {
        if !roots.is_empty() {
            let types: Vec<String> = roots.iter().map(|c| format!("`{}`", c.ty)).collect();
            composer.failures.push(format!("`{tree}` composes only to {}, not `t`", types.join(", ")));
        }
        return Err(ComposeError::NoReading { failures: composer.failures });
    }

    found.sort_by(|a, b| a.0.cmp(&b.0));
    let mut readings: Vec<Reading> = Vec::new();
    for (_, r) in found {
        if !readings.iter().any(|k| k.term.alpha_eq(&r.term)) {
            readings.push(r);
        }
    }
    let total = readings.len();
    readings.truncate(opts.max_readings);
    Ok(Readings { readings, total })
}

/// Contextual preference over readings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Preference {
    /// Fewest coercions first.
    #[default]
    Cost,
    /// Readings that instantiate some binder at this type first.
    PreferType(Type),
    /// Readings that use this coercion first.
    PreferCoercion(String),
}

/// Stable re-sort of `readings` under `pref`; cost breaks ties.
pub fn order_readings(mut readings: Vec<Reading>, pref: &Preference) -> Vec<Reading> {
    match pref {
        Preference::Cost => readings.sort_by_key(|r| r.cost),
        Preference::PreferType(ty) => {
            readings.sort_by_key(|r| (!r.instantiations.iter().any(|i| i.ty.alpha_eq(ty)), r.cost))
        }
        Preference::PreferCoercion(name) => {
            readings.sort_by_key(|r| (!r.coercions_used.iter().any(|(_, c)| c == name), r.cost))
        }
    }
    readings
}

#[derive(Clone, Debug)]
struct Partial {
    term: Term,
    ty: Type,
    coercions: Vec<(String, String)>,
    instantiations: Vec<Instantiation>,
}

struct Composer<'a> {
    lexicon: &'a Lexicon,
    opts: &'a ComposeOptions,
    failures: Vec<String>,
}

fn push_unique(types: &mut Vec<Type>, ty: &Type) {
    if !types.iter().any(|t| t.alpha_eq(ty)) {
        types.push(ty.clone());
    }
}

/// Closed types occurring in `ty`, outermost first. Bodies of `Pi` types are
/// not entered.
fn closed_subtypes(ty: &Type, out: &mut Vec<Type>) {
    if ty.is_closed() {
        push_unique(out, ty);
    }
    if let Type::Arrow(d, c) = ty {
        closed_subtypes(d, out);
        closed_subtypes(c, out);
    }
}

fn specialize(cand: &Partial, universe: &[Type], head: &str) -> Vec<Partial> {
    let Type::Forall(binder, body) = &cand.ty else {
        return vec![cand.clone()];
    };
    let mut out = Vec::new();
    for ty in universe {
        let mut instantiations = cand.instantiations.clone();
        instantiations.push(Instantiation { head: head.to_string(), binder: binder.clone(), ty: ty.clone() });
        let next = Partial {
            term: Term::ty_app(cand.term.clone(), ty.clone()),
            ty: body.subst_type(binder, ty),
            coercions: cand.coercions.clone(),
            instantiations,
        };
        out.extend(specialize(&next, universe, head));
    }
    out
}

fn describe_types(cands: &[Partial]) -> String {
    let mut types = Vec::new();
    for c in cands {
        push_unique(&mut types, &c.ty);
    }
    types.iter().map(|t| format!("`{t}`")).collect::<Vec<_>>().join(", ")
}

impl Composer<'_> {
    fn candidates(&mut self, tree: &SyntaxTree, pending: &[Type], head: bool) -> Result<Vec<Partial>, ComposeError> {
        match tree {
            SyntaxTree::Leaf(word) => {
                let entry = self.lexicon.entry(word).ok_or_else(|| ComposeError::LeafNotInLexicon(word.clone()))?;
                let depth = if head { 0 } else { self.opts.max_coercions };
                Ok(coercion_candidates(entry, depth)
                    .into_iter()
                    .map(|c| Partial {
                        term: c.term,
                        ty: c.ty,
                        coercions: c.path.into_iter().map(|name| (word.clone(), name)).collect(),
                        instantiations: Vec::new(),
                    })
                    .collect())
            }
            SyntaxTree::Node(f, x) => {
                let args = self.candidates(x, &[], false)?;
                let mut universe = Vec::new();
                for a in &args {
                    closed_subtypes(&a.ty, &mut universe);
                }
                for ty in pending {
                    push_unique(&mut universe, ty);
                }
                let funs = self.candidates(f, &universe, true)?;
                let head_label = f.to_string();

                let mut out: Vec<Partial> = Vec::new();
                for fun in &funs {
                    for spec in specialize(fun, &universe, &head_label) {
                        let Type::Arrow(dom, cod) = &spec.ty else { continue };
                        for arg in args.iter().filter(|a| dom.alpha_eq(&a.ty)) {
                            let term = Term::app(spec.term.clone(), arg.term.clone());
                            if out.iter().any(|p| p.term.alpha_eq(&term)) {
                                continue;
                            }
                            let mut coercions = spec.coercions.clone();
                            coercions.extend(arg.coercions.iter().cloned());
                            let mut instantiations = spec.instantiations.clone();
                            instantiations.extend(arg.instantiations.iter().cloned());
                            out.push(Partial { term, ty: (**cod).clone(), coercions, instantiations });
                        }
                    }
                }
                if out.is_empty() && !funs.is_empty() && !args.is_empty() {
                    self.failures.push(format!(
                        "`{tree}`: no function candidate accepts an argument (function types: {}; argument types: {})",
                        describe_types(&funs),
                        describe_types(&args)
                    ));
                }
                Ok(out)
            }
        }
    }
}
