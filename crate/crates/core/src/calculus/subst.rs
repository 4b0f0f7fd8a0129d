//! Capture-avoiding substitution of terms for term variables and of types for
//! type variables.
//!
//! A binder is renamed only when it would capture something. Fresh names come
//! from [`fresh_name`], avoiding every identifier of both the body and the
//! substituted value, so the result also prints unambiguously.

use std::collections::BTreeSet;

use super::syntax::{fresh_name, Term, Type};

/// `u[x := v]`.
pub fn subst_term(u: &Term, x: &str, v: &Term) -> Term {
    let fv = v.free_vars();
    let consts = v.constants();
    let ftv = v.free_type_vars();
    let mut v_names = BTreeSet::new();
    v.collect_names(&mut v_names);
    TermSubst { x, v, fv: &fv, consts: &consts, ftv: &ftv, v_names: &v_names }.go(u)
}

struct TermSubst<'a> {
    x: &'a str,
    v: &'a Term,
    fv: &'a BTreeSet<String>,
    consts: &'a BTreeSet<String>,
    ftv: &'a BTreeSet<String>,
    v_names: &'a BTreeSet<String>,
}

impl TermSubst<'_> {
    fn avoid(&self, body: &Term) -> BTreeSet<String> {
        let mut names = self.v_names.clone();
        body.collect_names(&mut names);
        names.insert(self.x.to_string());
        names
    }

    fn go(&self, u: &Term) -> Term {
        match u {
            Term::Var(y) if y == self.x => self.v.clone(),
            Term::Var(_) | Term::Const(_) => u.clone(),
            Term::App(f, a) => Term::app(self.go(f), self.go(a)),
            Term::TyApp(f, ty) => Term::ty_app(self.go(f), ty.clone()),
            Term::Lam(y, ty, body) => {
                if y == self.x || !body.has_free_var(self.x) {
                    u.clone()
                } else if self.fv.contains(y) || self.consts.contains(y) {
                    let avoid = self.avoid(body);
                    let y2 = fresh_name(y, |n| avoid.contains(n));
                    let renamed = subst_term(body, y, &Term::var(&y2));
                    Term::lam(y2, ty.clone(), self.go(&renamed))
                } else {
                    Term::lam(y.clone(), ty.clone(), self.go(body))
                }
            }
            Term::TyLam(a, body) => {
                if !body.has_free_var(self.x) {
                    u.clone()
                } else if self.ftv.contains(a) {
                    let avoid = self.avoid(body);
                    let a2 = fresh_name(a, |n| avoid.contains(n));
                    let renamed = body.subst_type(a, &Type::var(&a2));
                    Term::ty_lam(a2, self.go(&renamed))
                } else {
                    Term::ty_lam(a.clone(), self.go(body))
                }
            }
        }
    }
}

/// Substitution of a type for a free type variable, `target[a := ty]`.
pub trait SubstType: Sized {
    fn subst_type(&self, a: &str, ty: &Type) -> Self;
}

impl SubstType for Type {
    fn subst_type(&self, a: &str, ty: &Type) -> Type {
        let ftv = ty.free_vars();
        subst_in_type(self, a, ty, &ftv)
    }
}

impl SubstType for Term {
    fn subst_type(&self, a: &str, ty: &Type) -> Term {
        let ftv = ty.free_vars();
        subst_in_term(self, a, ty, &ftv)
    }
}

fn type_avoid(a: &str, ty: &Type, body_names: impl FnOnce(&mut BTreeSet<String>)) -> BTreeSet<String> {
    let mut names = BTreeSet::new();
    ty.collect_names(&mut names);
    body_names(&mut names);
    names.insert(a.to_string());
    names
}

fn subst_in_type(t: &Type, a: &str, ty: &Type, ftv: &BTreeSet<String>) -> Type {
    match t {
        Type::Var(b) if b == a => ty.clone(),
        Type::Var(_) | Type::Base(_) => t.clone(),
        Type::Arrow(d, c) => Type::arrow(subst_in_type(d, a, ty, ftv), subst_in_type(c, a, ty, ftv)),
        Type::Forall(b, body) => {
            if b == a || !body.has_free_var(a) {
                t.clone()
            } else if ftv.contains(b) {
                let avoid = type_avoid(a, ty, |n| body.collect_names(n));
                let b2 = fresh_name(b, |n| avoid.contains(n));
                let renamed = body.subst_type(b, &Type::var(&b2));
                Type::forall(b2, subst_in_type(&renamed, a, ty, ftv))
            } else {
                Type::forall(b.clone(), subst_in_type(body, a, ty, ftv))
            }
        }
    }
}

fn subst_in_term(u: &Term, a: &str, ty: &Type, ftv: &BTreeSet<String>) -> Term {
    match u {
        Term::Var(_) | Term::Const(_) => u.clone(),
        Term::App(f, x) => Term::app(subst_in_term(f, a, ty, ftv), subst_in_term(x, a, ty, ftv)),
        Term::Lam(x, annot, body) => {
            Term::lam(x.clone(), subst_in_type(annot, a, ty, ftv), subst_in_term(body, a, ty, ftv))
        }
        Term::TyApp(f, arg) => Term::ty_app(subst_in_term(f, a, ty, ftv), subst_in_type(arg, a, ty, ftv)),
        Term::TyLam(b, body) => {
            if b == a || !body.has_free_type_var(a) {
                u.clone()
            } else if ftv.contains(b) {
                let avoid = type_avoid(a, ty, |n| body.collect_names(n));
                let b2 = fresh_name(b, |n| avoid.contains(n));
                let renamed = body.subst_type(b, &Type::var(&b2));
                Term::ty_lam(b2, subst_in_term(&renamed, a, ty, ftv))
            } else {
                Term::ty_lam(b.clone(), subst_in_term(body, a, ty, ftv))
            }
        }
    }
}
