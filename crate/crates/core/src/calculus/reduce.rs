use thiserror::Error;

use super::subst::{subst_term, SubstType};
use super::syntax::Term;

/// Default step budget. System F is strongly normalizing, so running out
/// means a bug or an adversarial input.
pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost-outermost (normal order).
    #[default]
    NormalOrder,
    /// Rightmost-innermost; used to cross-check confluence.
    RightmostInnermost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("normalization did not finish within {0} steps")]
pub struct FuelExhausted(pub usize);

/// Contracts the leftmost-outermost redex, term-β or type-β.
pub fn beta_step(u: &Term) -> Option<Term> {
    beta_step_with(u, Strategy::NormalOrder)
}

pub fn beta_step_with(u: &Term, strategy: Strategy) -> Option<Term> {
    match strategy {
        Strategy::NormalOrder => outermost(u),
        Strategy::RightmostInnermost => innermost(u),
    }
}

pub fn normalize(u: &Term, fuel: usize) -> Result<Term, FuelExhausted> {
    normalize_with(u, fuel, Strategy::NormalOrder)
}

pub fn normalize_with(u: &Term, fuel: usize, strategy: Strategy) -> Result<Term, FuelExhausted> {
    let mut cur = u.clone();
    for _ in 0..fuel {
        match beta_step_with(&cur, strategy) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if beta_step_with(&cur, strategy).is_none() {
        Ok(cur)
    } else {
        Err(FuelExhausted(fuel))
    }
}

pub fn is_normal(u: &Term) -> bool {
    outermost(u).is_none()
}

fn contract(u: &Term) -> Option<Term> {
    match u {
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, body) => Some(subst_term(body, x, a)),
            _ => None,
        },
        Term::TyApp(f, ty) => match &**f {
            Term::TyLam(a, body) => Some(body.subst_type(a, ty)),
            _ => None,
        },
        _ => None,
    }
}

fn outermost(u: &Term) -> Option<Term> {
    if let Some(r) = contract(u) {
        return Some(r);
    }
    match u {
        Term::App(f, a) => match outermost(f) {
            Some(f2) => Some(Term::app(f2, (**a).clone())),
            None => outermost(a).map(|a2| Term::app((**f).clone(), a2)),
        },
        Term::TyApp(f, ty) => outermost(f).map(|f2| Term::ty_app(f2, ty.clone())),
        Term::Lam(x, ty, body) => outermost(body).map(|b| Term::lam(x.clone(), ty.clone(), b)),
        Term::TyLam(a, body) => outermost(body).map(|b| Term::ty_lam(a.clone(), b)),
        Term::Var(_) | Term::Const(_) => None,
    }
}

fn innermost(u: &Term) -> Option<Term> {
    let inner = match u {
        Term::App(f, a) => match innermost(a) {
            Some(a2) => Some(Term::app((**f).clone(), a2)),
            None => innermost(f).map(|f2| Term::app(f2, (**a).clone())),
        },
        Term::TyApp(f, ty) => innermost(f).map(|f2| Term::ty_app(f2, ty.clone())),
        Term::Lam(x, ty, body) => innermost(body).map(|b| Term::lam(x.clone(), ty.clone(), b)),
        Term::TyLam(a, body) => innermost(body).map(|b| Term::ty_lam(a.clone(), b)),
        Term::Var(_) | Term::Const(_) => None,
    };
    inner.or_else(|| contract(u))
}
