use std::collections::BTreeSet;

use crate::calculus::{fresh_name, is_numeral, SpineArg, Term, Type};
use crate::lexicon::Signature;

use super::formula::{Abstraction, Atom, Formula, GroundTerm};
use super::LogicError;

/// Translates a β-normal term of type `t` into a first-order formula,
/// directed by head constants. Free term variables become
/// [`GroundTerm::BoundVar`]s, so open predicate bodies extract as well.
pub fn extract_formula(u: &Term, sig: &Signature) -> Result<Formula, LogicError> {
    Extractor { sig }.formula(u)
}

struct Extractor<'a> {
    sig: &'a Signature,
}

fn outside(u: &Term) -> LogicError {
    LogicError::NotLogicalFragment(u.to_string())
}

impl Extractor<'_> {
    fn formula(&self, u: &Term) -> Result<Formula, LogicError> {
        let (head, spine) = u.spine();
        let Term::Const(head) = head else {
            return Err(outside(u));
        };
        let split = spine.iter().position(|a| matches!(a, SpineArg::Term(_))).unwrap_or(spine.len());
        let mut type_args = Vec::new();
        for arg in &spine[..split] {
            if let SpineArg::Type(ty) = arg {
                type_args.push((*ty).clone());
            }
        }
        let mut args = Vec::new();
        for arg in &spine[split..] {
            match arg {
                SpineArg::Term(a) => args.push(*a),
                SpineArg::Type(_) => return Err(outside(u)),
            }
        }

        match (head.as_str(), type_args.as_slice(), args.as_slice()) {
            ("forall", [ty], [pred]) => {
                let abs = self.abstraction(ty, pred)?;
                Ok(Formula::Forall(abs.var, abs.ty, Box::new(abs.body)))
            }
            ("exists", [ty], [pred]) => {
                let abs = self.abstraction(ty, pred)?;
                Ok(Formula::Exists(abs.var, abs.ty, Box::new(abs.body)))
            }
            ("and", [], [l, r]) => Ok(Formula::And(Box::new(self.formula(l)?), Box::new(self.formula(r)?))),
            ("or", [], [l, r]) => Ok(Formula::Or(Box::new(self.formula(l)?), Box::new(self.formula(r)?))),
            ("imp", [], [l, r]) => Ok(Formula::Imp(Box::new(self.formula(l)?), Box::new(self.formula(r)?))),
            ("not", [], [inner]) => Ok(Formula::not(self.formula(inner)?)),
            ("forall" | "exists" | "and" | "or" | "imp" | "not" | "spec" | "tau" | "eps", _, _) => Err(outside(u)),
            (rel, _, _) => {
                let args = args.iter().map(|a| self.ground(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(Formula::Atom(Atom {
                    rel: rel.to_string(),
                    type_args,
                    args,
                    scalar: self.sig.is_scalar(rel),
                }))
            }
        }
    }

    /// The body of a quantifier or choice term. A predicate that is not a
    /// λ is applied to a fresh variable.
    fn abstraction(&self, ty: &Type, pred: &Term) -> Result<Abstraction, LogicError> {
        match pred {
            Term::Lam(x, annot, body) => {
                Ok(Abstraction { var: x.clone(), ty: annot.clone(), body: self.formula(body)? })
            }
            _ => {
                let mut names = BTreeSet::new();
                names.extend(pred.free_vars());
                names.extend(pred.constants());
                let x = if names.contains("x") { fresh_name("x", |n| names.contains(n)) } else { "x".to_string() };
                let body = self.formula(&Term::app(pred.clone(), Term::var(&x)))?;
                Ok(Abstraction { var: x, ty: ty.clone(), body })
            }
        }
    }

    fn ground(&self, u: &Term) -> Result<GroundTerm, LogicError> {
        match u {
            Term::Var(x) => Ok(GroundTerm::BoundVar(x.clone())),
            Term::Const(c) if is_numeral(c) => GroundTerm::numeral(c).ok_or_else(|| outside(u)),
            Term::Const(c) => Ok(GroundTerm::ModelConst(c.clone())),
            Term::TyApp(f, ty) if matches!(&**f, Term::Const(c) if c == "spec") => Ok(GroundTerm::Specimen(ty.clone())),
            Term::App(f, pred) => match &**f {
                Term::TyApp(g, ty) if matches!(&**g, Term::Const(c) if c == "tau") => {
                    Ok(GroundTerm::Tau(Box::new(self.abstraction(ty, pred)?)))
                }
                Term::TyApp(g, ty) if matches!(&**g, Term::Const(c) if c == "eps") => {
                    Ok(GroundTerm::Eps(Box::new(self.abstraction(ty, pred)?)))
                }
                Term::Const(c) if !is_numeral(c) => Ok(GroundTerm::CoerceApp(c.clone(), Box::new(self.ground(pred)?))),
                _ => Err(outside(u)),
            },
            _ => Err(outside(u)),
        }
    }
}
