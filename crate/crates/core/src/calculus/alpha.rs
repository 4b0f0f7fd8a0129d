use super::syntax::{Term, Type};

/// Identity up to consistent renaming of bound term and type variables.
pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

impl AlphaEq for Type {
    fn alpha_eq(&self, other: &Type) -> bool {
        types_eq(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

impl AlphaEq for Term {
    fn alpha_eq(&self, other: &Term) -> bool {
        Env::default().terms_eq(self, other)
    }
}

/// Free names compare by name, bound ones by binder depth.
fn vars_eq(x: &str, y: &str, left: &[String], right: &[String]) -> bool {
    let i = left.iter().rposition(|b| b == x);
    let j = right.iter().rposition(|b| b == y);
    match (i, j) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn types_eq(s: &Type, t: &Type, left: &mut Vec<String>, right: &mut Vec<String>) -> bool {
    match (s, t) {
        (Type::Base(a), Type::Base(b)) => a == b,
        (Type::Var(a), Type::Var(b)) => vars_eq(a, b, left, right),
        (Type::Arrow(d1, c1), Type::Arrow(d2, c2)) => {
            types_eq(d1, d2, left, right) && types_eq(c1, c2, left, right)
        }
        (Type::Forall(a, b1), Type::Forall(b, b2)) => {
            left.push(a.clone());
            right.push(b.clone());
            let eq = types_eq(b1, b2, left, right);
            left.pop();
            right.pop();
            eq
        }
        _ => false,
    }
}

#[derive(Default)]
struct Env {
    vars_l: Vec<String>,
    vars_r: Vec<String>,
    tvars_l: Vec<String>,
    tvars_r: Vec<String>,
}

impl Env {
    fn types_eq(&mut self, s: &Type, t: &Type) -> bool {
        types_eq(s, t, &mut self.tvars_l, &mut self.tvars_r)
    }

    fn terms_eq(&mut self, u: &Term, v: &Term) -> bool {
        match (u, v) {
            (Term::Var(x), Term::Var(y)) => vars_eq(x, y, &self.vars_l, &self.vars_r),
            (Term::Const(c), Term::Const(d)) => c == d,
            (Term::App(f1, a1), Term::App(f2, a2)) => self.terms_eq(f1, f2) && self.terms_eq(a1, a2),
            (Term::TyApp(f1, t1), Term::TyApp(f2, t2)) => self.terms_eq(f1, f2) && self.types_eq(t1, t2),
            (Term::Lam(x, t1, b1), Term::Lam(y, t2, b2)) => {
                if !self.types_eq(t1, t2) {
                    return false;
                }
                self.vars_l.push(x.clone());
                self.vars_r.push(y.clone());
                let eq = self.terms_eq(b1, b2);
                self.vars_l.pop();
                self.vars_r.pop();
                eq
            }
            (Term::TyLam(a, b1), Term::TyLam(b, b2)) => {
                self.tvars_l.push(a.clone());
                self.tvars_r.push(b.clone());
                let eq = self.terms_eq(b1, b2);
                self.tvars_l.pop();
                self.tvars_r.pop();
                eq
            }
            _ => false,
        }
    }
}
