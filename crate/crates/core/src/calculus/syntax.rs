use std::collections::BTreeSet;

/// A System F type.
///
/// `Base` and `Var` are distinguished at parse time: a name declared as a
/// base type in the surrounding signature is `Base`, anything else (or any
/// name bound by an enclosing `Pi` / `/\`) is a type variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(String),
    Var(String),
    Arrow(Box<Type>, Box<Type>),
    Forall(String, Box<Type>),
}

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base(name.into())
    }

    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(name.into())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn forall(binder: impl Into<String>, body: Type) -> Type {
        Type::Forall(binder.into(), Box::new(body))
    }

    /// The proposition type `t`.
    pub fn prop() -> Type {
        Type::base("t")
    }

    pub fn is_base(&self, name: &str) -> bool {
        matches!(self, Type::Base(n) if n == name)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(_) => {}
            Type::Var(a) => {
                if !bound.iter().any(|b| b == a) {
                    out.insert(a.clone());
                }
            }
            Type::Arrow(d, c) => {
                d.collect_free_vars(bound, out);
                c.collect_free_vars(bound, out);
            }
            Type::Forall(a, body) => {
                bound.push(a.clone());
                body.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        match self {
            Type::Base(_) => false,
            Type::Var(a) => a == name,
            Type::Arrow(d, c) => d.has_free_var(name) || c.has_free_var(name),
            Type::Forall(a, body) => a != name && body.has_free_var(name),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every identifier occurring anywhere in the type, bound or free.
    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Base(n) | Type::Var(n) => {
                out.insert(n.clone());
            }
            Type::Arrow(d, c) => {
                d.collect_names(out);
                c.collect_names(out);
            }
            Type::Forall(a, body) => {
                out.insert(a.clone());
                body.collect_names(out);
            }
        }
    }

    /// Base-type names mentioned by the type.
    pub fn base_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn go(t: &Type, out: &mut BTreeSet<String>) {
            match t {
                Type::Base(n) => {
                    out.insert(n.clone());
                }
                Type::Var(_) => {}
                Type::Arrow(d, c) => {
                    go(d, out);
                    go(c, out);
                }
                Type::Forall(_, b) => go(b, out),
            }
        }
        go(self, &mut out);
        out
    }
}

/// A Church-style System F term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(Box<Term>, Box<Term>),
    Lam(String, Type, Box<Term>),
    TyApp(Box<Term>, Type),
    TyLam(String, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(f: Term, arg: Term) -> Term {
        Term::App(Box::new(f), Box::new(arg))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(binder: impl Into<String>, ty: Type, body: Term) -> Term {
        Term::Lam(binder.into(), ty, Box::new(body))
    }

    pub fn ty_app(f: Term, ty: Type) -> Term {
        Term::TyApp(Box::new(f), ty)
    }

    pub fn ty_lam(binder: impl Into<String>, body: Term) -> Term {
        Term::TyLam(binder.into(), Box::new(body))
    }

    /// Number of syntax nodes, types not included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, _, b) | Term::TyLam(_, b) => 1 + b.size(),
            Term::TyApp(f, _) => 1 + f.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(f, a) => {
                f.collect_free_vars(bound, out);
                a.collect_free_vars(bound, out);
            }
            Term::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free_vars(bound, out);
                bound.pop();
            }
            Term::TyApp(f, _) => f.collect_free_vars(bound, out),
            Term::TyLam(_, b) => b.collect_free_vars(bound, out),
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        match self {
            Term::Var(x) => x == name,
            Term::Const(_) => false,
            Term::App(f, a) => f.has_free_var(name) || a.has_free_var(name),
            Term::Lam(x, _, b) => x != name && b.has_free_var(name),
            Term::TyApp(f, _) => f.has_free_var(name),
            Term::TyLam(_, b) => b.has_free_var(name),
        }
    }

    /// Type variables occurring free in annotations and type arguments.
    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_type_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_type_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_) | Term::Const(_) => {}
            Term::App(f, a) => {
                f.collect_free_type_vars(bound, out);
                a.collect_free_type_vars(bound, out);
            }
            Term::Lam(_, ty, b) => {
                ty.collect_free_vars(bound, out);
                b.collect_free_type_vars(bound, out);
            }
            Term::TyApp(f, ty) => {
                f.collect_free_type_vars(bound, out);
                ty.collect_free_vars(bound, out);
            }
            Term::TyLam(a, b) => {
                bound.push(a.clone());
                b.collect_free_type_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_type_var(&self, name: &str) -> bool {
        match self {
            Term::Var(_) | Term::Const(_) => false,
            Term::App(f, a) => f.has_free_type_var(name) || a.has_free_type_var(name),
            Term::Lam(_, ty, b) => ty.has_free_var(name) || b.has_free_type_var(name),
            Term::TyApp(f, ty) => f.has_free_type_var(name) || ty.has_free_var(name),
            Term::TyLam(a, b) => a != name && b.has_free_type_var(name),
        }
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn go(u: &Term, out: &mut BTreeSet<String>) {
            match u {
                Term::Var(_) => {}
                Term::Const(c) => {
                    out.insert(c.clone());
                }
                Term::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
                Term::Lam(_, _, b) | Term::TyLam(_, b) | Term::TyApp(b, _) => go(b, out),
            }
        }
        go(self, &mut out);
        out
    }

    /// Every identifier in the term: variables, constants, binders and all
    /// names inside types. Used as the avoid-set for fresh renaming.
    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) | Term::Const(x) => {
                out.insert(x.clone());
            }
            Term::App(f, a) => {
                f.collect_names(out);
                a.collect_names(out);
            }
            Term::Lam(x, ty, b) => {
                out.insert(x.clone());
                ty.collect_names(out);
                b.collect_names(out);
            }
            Term::TyApp(f, ty) => {
                f.collect_names(out);
                ty.collect_names(out);
            }
            Term::TyLam(a, b) => {
                out.insert(a.clone());
                b.collect_names(out);
            }
        }
    }

    /// Splits `h a1 a2 {T} a3 ...` into its head and spine.
    pub fn spine(&self) -> (&Term, Vec<SpineArg<'_>>) {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::App(f, a) => {
                    args.push(SpineArg::Term(a));
                    cur = f;
                }
                Term::TyApp(f, ty) => {
                    args.push(SpineArg::Type(ty));
                    cur = f;
                }
                _ => break,
            }
        }
        args.reverse();
        (cur, args)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpineArg<'a> {
    Term(&'a Term),
    Type(&'a Type),
}

/// True for decimal literals such as `95` or `1.5`; these are constants of
/// type `float`.
pub fn is_numeral(name: &str) -> bool {
    let (int, frac) = match name.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (name, None),
    };
    !int.is_empty()
        && int.bytes().all(|b| b.is_ascii_digit())
        && frac.is_none_or(|f| !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()))
}

/// Picks `stem1`, `stem2`, ... (trailing digits of `name` stripped) until the
/// candidate is not in use.
pub fn fresh_name(name: &str, in_use: impl Fn(&str) -> bool) -> String {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { name } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !in_use(cand))
        .expect("unbounded suffix search")
}
