//! Syntax-directed type checking.
//!
//! Every λ carries its binder type, so `type_of` never searches. Free type
//! variables are admitted in annotations (they are implicitly universally
//! bound at top level); base types must be declared.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::alpha::AlphaEq;
use super::subst::SubstType;
use super::syntax::{is_numeral, Term, Type};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypingContext {
    pub base_types: BTreeSet<String>,
    pub tvars: BTreeSet<String>,
    pub vars: BTreeMap<String, Type>,
    pub constants: BTreeMap<String, Type>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("argument has type `{got}` but `{expected}` was expected")]
    ApplicationMismatch { expected: Type, got: Type },
    #[error("`{term}` has type `{ty}` and cannot be applied")]
    NotAFunction { term: Term, ty: Type },
    #[error("`{term}` has type `{ty}`, which is not a Pi type")]
    NotAForall { term: Term, ty: Type },
    #[error("cannot abstract over `{tvar}`: free variable `{var}` has type `{ty}`")]
    GenericityViolation { tvar: String, var: String, ty: Type },
    #[error("ill-formed type: unknown base type `{0}`")]
    IllFormedType(String),
}

pub fn type_of(ctx: &TypingContext, u: &Term) -> Result<Type, TypeError> {
    Checker { ctx, vars: Vec::new() }.infer(u)
}

/// Checks that every base type of `ty` is declared.
pub fn check_type(ctx: &TypingContext, ty: &Type) -> Result<(), TypeError> {
    match ty.base_names().into_iter().find(|n| !ctx.base_types.contains(n)) {
        Some(n) => Err(TypeError::IllFormedType(n)),
        None => Ok(()),
    }
}

struct Checker<'a> {
    ctx: &'a TypingContext,
    vars: Vec<(String, Type)>,
}

impl Checker<'_> {
    fn lookup(&self, x: &str) -> Option<&Type> {
        self.vars
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, ty)| ty)
            .or_else(|| self.ctx.vars.get(x))
    }

    fn infer(&mut self, u: &Term) -> Result<Type, TypeError> {
        match u {
            Term::Var(x) => self.lookup(x).cloned().ok_or_else(|| TypeError::UnboundVariable(x.clone())),
            Term::Const(c) => match self.ctx.constants.get(c) {
                Some(ty) => Ok(ty.clone()),
                None if is_numeral(c) => Ok(Type::base("float")),
                None => Err(TypeError::UnknownConstant(c.clone())),
            },
            Term::App(f, a) => {
                let fty = self.infer(f)?;
                let Type::Arrow(dom, cod) = fty else {
                    return Err(TypeError::NotAFunction { term: (**f).clone(), ty: fty });
                };
                let aty = self.infer(a)?;
                if !dom.alpha_eq(&aty) {
                    return Err(TypeError::ApplicationMismatch { expected: *dom, got: aty });
                }
                Ok(*cod)
            }
            Term::Lam(x, ty, body) => {
                check_type(self.ctx, ty)?;
                self.vars.push((x.clone(), ty.clone()));
                let body_ty = self.infer(body);
                self.vars.pop();
                Ok(Type::arrow(ty.clone(), body_ty?))
            }
            Term::TyApp(f, arg) => {
                let fty = self.infer(f)?;
                let Type::Forall(a, body) = fty else {
                    return Err(TypeError::NotAForall { term: (**f).clone(), ty: fty });
                };
                check_type(self.ctx, arg)?;
                Ok(body.subst_type(&a, arg))
            }
            Term::TyLam(a, body) => {
                for x in body.free_vars() {
                    if let Some(ty) = self.lookup(&x) {
                        if ty.has_free_var(a) {
                            return Err(TypeError::GenericityViolation {
                                tvar: a.clone(),
                                var: x,
                                ty: ty.clone(),
                            });
                        }
                    }
                }
                Ok(Type::forall(a.clone(), self.infer(body)?))
            }
        }
    }
}
