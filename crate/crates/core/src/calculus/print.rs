use std::fmt;

use super::syntax::{Term, Type};

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) | Type::Var(n) => f.write_str(n),
            Type::Arrow(d, c) => {
                if matches!(**d, Type::Arrow(..) | Type::Forall(..)) {
                    write!(f, "({d}) -> {c}")
                } else {
                    write!(f, "{d} -> {c}")
                }
            }
            Type::Forall(a, body) => write!(f, "Pi {a}. {body}"),
        }
    }
}

struct Annot<'a>(&'a Type);

impl fmt::Display for Annot<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if matches!(self.0, Type::Forall(..)) {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Const(x) => f.write_str(x),
            Term::Lam(x, ty, body) => write!(f, "\\{x}:{}. {body}", Annot(ty)),
            Term::TyLam(a, body) => write!(f, "/\\{a}. {body}"),
            Term::App(fun, arg) => {
                match **fun {
                    Term::Lam(..) | Term::TyLam(..) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match **arg {
                    Term::App(..) | Term::Lam(..) | Term::TyLam(..) => write!(f, " ({arg})"),
                    _ => write!(f, " {arg}"),
                }
            }
            Term::TyApp(fun, ty) => match **fun {
                Term::App(..) | Term::Lam(..) | Term::TyLam(..) => write!(f, "({fun}){{{ty}}}"),
                _ => write!(f, "{fun}{{{ty}}}"),
            },
        }
    }
}
