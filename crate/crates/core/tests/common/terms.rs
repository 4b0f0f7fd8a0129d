//! Seeded generators: well-typed closed terms over a small signature, and
//! raw (possibly ill-typed) terms over tiny name pools for capture tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specimen_core::calculus::{AlphaEq, SubstType, Term, Type};
use specimen_core::lexicon::{load_lexicon, Signature};

pub const SIGNATURE: &str = "\
type e
type o
constant c : e
constant d : o
constant yes : t
constant k : e -> o
constant p : e -> t
constant q : o -> t
constant r : Pi a. a -> a -> t
constant twice : Pi a. (a -> a) -> a -> a
";

pub fn signature() -> Signature {
    load_lexicon(SIGNATURE).expect("test signature").signature
}

const TERM_VARS: [&str; 4] = ["x", "y", "z", "w"];
const TYPE_VARS: [&str; 3] = ["a", "b", "c0"];

#[derive(Clone, Default)]
struct Scope {
    tvars: Vec<String>,
    vars: Vec<(String, Type)>,
}

impl Scope {
    fn with_var(&self, x: &str, ty: Type) -> Scope {
        let mut s = self.clone();
        s.vars.retain(|(y, _)| y != x);
        s.vars.push((x.to_string(), ty));
        s
    }

    fn with_tvar(&self, a: &str) -> Scope {
        let mut s = self.clone();
        s.tvars.push(a.to_string());
        s
    }
}

pub struct TermGen {
    rng: ChaCha8Rng,
    sig: Signature,
    fresh: usize,
}

impl TermGen {
    pub fn new(seed: u64) -> Self {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), sig: signature(), fresh: 0 }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// A closed well-typed term of size at most `max_size` and its
    /// intended type.
    pub fn closed(&mut self, max_size: usize) -> (Term, Type) {
        loop {
            let ty = self.ty(&Scope::default(), 2);
            let budget = self.rng.gen_range(4..=max_size);
            let u = self.term(&Scope::default(), &ty, budget);
            if u.size() <= max_size {
                return (u, ty);
            }
        }
    }

    /// `(u, x, A, v)` with `x:A ⊢ u` and `⊢ v : A`, plus the type of `u`.
    pub fn open_pair(&mut self, max_size: usize) -> (Term, String, Type, Term, Type) {
        loop {
            let a = self.ty(&Scope::default(), 2);
            let b = self.ty(&Scope::default(), 2);
            let x = TERM_VARS.choose(&mut self.rng).unwrap().to_string();
            let scope = Scope::default().with_var(&x, a.clone());
            let budget = self.rng.gen_range(3..=max_size);
            let u = self.term(&scope, &b, budget);
            let v = self.term(&Scope::default(), &a, budget / 2 + 1);
            if u.size() <= max_size && v.size() <= max_size && u.has_free_var(&x) {
                return (u, x, a, v, b);
            }
        }
    }

    fn fresh_tvar(&mut self, scope: &Scope) -> String {
        let free: Vec<&str> = TYPE_VARS.iter().copied().filter(|a| !scope.tvars.iter().any(|b| b == a)).collect();
        match free.choose(&mut self.rng) {
            Some(a) if self.rng.gen_bool(0.7) => a.to_string(),
            _ => {
                self.fresh += 1;
                format!("t{}v", self.fresh)
            }
        }
    }

    fn ty(&mut self, scope: &Scope, depth: usize) -> Type {
        let roll = self.rng.gen_range(0..10);
        if depth == 0 || roll < 4 {
            let mut atoms: Vec<Type> = vec![Type::base("e"), Type::base("o"), Type::base("t")];
            atoms.extend(scope.tvars.iter().map(Type::var));
            return atoms.choose(&mut self.rng).unwrap().clone();
        }
        if roll < 9 {
            return Type::arrow(self.ty(scope, depth - 1), self.ty(scope, depth - 1));
        }
        let a = self.fresh_tvar(scope);
        let inner = scope.with_tvar(&a);
        let body = match self.rng.gen_range(0..3) {
            0 => Type::arrow(Type::var(&a), Type::var(&a)),
            1 => Type::arrow(Type::arrow(Type::var(&a), Type::prop()), Type::prop()),
            _ => Type::arrow(Type::var(&a), self.ty(&inner, depth - 1)),
        };
        Type::forall(a, body)
    }

    fn term(&mut self, scope: &Scope, target: &Type, budget: usize) -> Term {
        if budget <= 1 {
            return self.leaf(scope, target);
        }
        let roll = self.rng.gen_range(0..100);
        match target {
            Type::Arrow(..) | Type::Forall(..) if roll < 45 => return self.intro(scope, target, budget),
            _ => {}
        }
        match roll {
            0..=34 => {
                if let Some(u) = self.elim(scope, target, budget) {
                    return u;
                }
            }
            35..=59 => {
                let arg_ty = self.ty(scope, 1);
                let x = *TERM_VARS.choose(&mut self.rng).unwrap();
                let body = self.term(&scope.with_var(x, arg_ty.clone()), target, budget / 2);
                let arg = self.term(scope, &arg_ty, budget / 2);
                return Term::app(Term::lam(x, arg_ty, body), arg);
            }
            60..=79 => {
                let a = self.fresh_tvar(scope);
                let inner = scope.with_tvar(&a);
                let y = *TERM_VARS.choose(&mut self.rng).unwrap();
                let body = self.term(&inner.with_var(y, Type::var(&a)), target, budget / 2);
                let s = self.ty(scope, 1);
                let arg = self.term(scope, &s, budget / 2);
                return Term::app(Term::ty_app(Term::ty_lam(&a, Term::lam(y, Type::var(&a), body)), s), arg);
            }
            _ => {}
        }
        match target {
            Type::Arrow(..) | Type::Forall(..) => self.intro(scope, target, budget),
            _ => self.elim(scope, target, budget).unwrap_or_else(|| self.leaf(scope, target)),
        }
    }

    fn intro(&mut self, scope: &Scope, target: &Type, budget: usize) -> Term {
        match target {
            Type::Arrow(a, b) => {
                let x = *TERM_VARS.choose(&mut self.rng).unwrap();
                let body = self.term(&scope.with_var(x, (**a).clone()), b, budget.saturating_sub(1));
                Term::lam(x, (**a).clone(), body)
            }
            Type::Forall(a, b) => {
                let fresh = self.fresh_tvar(scope);
                let body_ty = if &fresh == a { (**b).clone() } else { b.subst_type(a, &Type::var(&fresh)) };
                let body = self.term(&scope.with_tvar(&fresh), &body_ty, budget.saturating_sub(1));
                Term::ty_lam(fresh, body)
            }
            _ => self.leaf(scope, target),
        }
    }

    /// A variable or constant applied to enough arguments to reach `target`.
    fn elim(&mut self, scope: &Scope, target: &Type, budget: usize) -> Option<Term> {
        let mut heads: Vec<(Term, Type)> = scope.vars.iter().map(|(x, t)| (Term::var(x), t.clone())).collect();
        heads.extend(self.sig.constants.iter().map(|(c, t)| (Term::constant(c), t.clone())));
        heads.shuffle(&mut self.rng);
        for (head, head_ty) in heads {
            let mut ty = head_ty;
            let mut plan: Vec<Result<Type, Type>> = Vec::new();
            for _ in 0..4 {
                if ty.alpha_eq(target) {
                    let share = (budget.saturating_sub(1) / plan.len().max(1)).max(1);
                    let mut u = head;
                    for step in plan {
                        u = match step {
                            Ok(arg_ty) => Term::app(u, self.term(scope, &arg_ty, share)),
                            Err(inst) => Term::ty_app(u, inst),
                        };
                    }
                    return Some(u);
                }
                ty = match ty {
                    Type::Arrow(a, b) => {
                        plan.push(Ok(*a));
                        *b
                    }
                    Type::Forall(a, b) => {
                        let inst = if self.rng.gen_bool(0.5) { target.clone() } else { self.ty(scope, 1) };
                        plan.push(Err(inst.clone()));
                        b.subst_type(&a, &inst)
                    }
                    _ => break,
                };
            }
        }
        None
    }

    fn leaf(&mut self, scope: &Scope, target: &Type) -> Term {
        let mut options: Vec<Term> =
            scope.vars.iter().filter(|(_, t)| t.alpha_eq(target)).map(|(x, _)| Term::var(x)).collect();
        options.extend(self.sig.constants.iter().filter(|(_, t)| t.alpha_eq(target)).map(|(c, _)| Term::constant(c)));
        if let Some(u) = options.choose(&mut self.rng) {
            return u.clone();
        }
        match target {
            Type::Arrow(..) | Type::Forall(..) => self.intro(scope, target, 1),
            _ => Term::ty_app(Term::constant("spec"), target.clone()),
        }
    }
}

/// Untyped terms over tiny name pools, so that substitution meets every
/// shadowing and capture situation.
pub struct RawGen {
    rng: ChaCha8Rng,
}

const RAW_VARS: [&str; 4] = ["x", "y", "x1", "y1"];
const RAW_TVARS: [&str; 3] = ["a", "b", "a1"];

impl RawGen {
    pub fn new(seed: u64) -> Self {
        RawGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn var(&mut self) -> String {
        RAW_VARS.choose(&mut self.rng).unwrap().to_string()
    }

    pub fn tvar(&mut self) -> String {
        RAW_TVARS.choose(&mut self.rng).unwrap().to_string()
    }

    pub fn ty(&mut self, depth: usize) -> Type {
        match self.rng.gen_range(0..if depth == 0 { 2 } else { 5 }) {
            0 => Type::base("e"),
            1 => Type::var(self.tvar()),
            2 | 3 => Type::arrow(self.ty(depth - 1), self.ty(depth - 1)),
            _ => Type::forall(self.tvar(), self.ty(depth - 1)),
        }
    }

    pub fn term(&mut self, depth: usize) -> Term {
        match self.rng.gen_range(0..if depth == 0 { 2 } else { 7 }) {
            0 => Term::var(self.var()),
            1 => Term::constant("c"),
            2 | 3 => Term::app(self.term(depth - 1), self.term(depth - 1)),
            4 => Term::lam(self.var(), self.ty(1), self.term(depth - 1)),
            5 => Term::ty_app(self.term(depth - 1), self.ty(1)),
            _ => Term::ty_lam(self.tvar(), self.term(depth - 1)),
        }
    }
}
