//! Property suites shared by the focused test targets and the acceptance
//! run. Each returns a one-line summary or the first counterexample.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use specimen_core::calculus::{
    beta_step, is_normal, normalize, normalize_with, type_of, AlphaEq, Strategy, Term, Type, DEFAULT_FUEL,
};
use specimen_core::composer::{enumerate_readings, ComposeError, ComposeOptions, SyntaxTree};
use specimen_core::lexicon::Lexicon;
use specimen_core::logic::{
    eval_formula, eval_term, judge_extension, judge_specimen, specimen_band, witness, Abstraction, EvalConfig,
    FiniteModel, Formula, GroundTerm, Mode, Rule, Status, Value,
};

use super::models::{self, ModelGen, PREDICATES};
use super::nameless;
use super::oracles;
use super::terms::TermGen;

pub type Outcome = Result<String, String>;

pub fn calculus(seed: u64, count: usize, max_size: usize) -> Outcome {
    let mut gen = TermGen::new(seed);
    let sig = gen.signature().clone();
    let ctx = sig.typing_context();
    let (mut longest, mut with_redex, mut type_redexes) = (0, 0, 0);
    for i in 0..count {
        let (u, ty) = gen.closed(max_size);
        let fail = |what: String| Err(format!("term #{i} `{u}`: {what}"));
        if u.size() > max_size {
            return fail(format!("size {} exceeds {max_size}", u.size()));
        }
        match type_of(&ctx, &u) {
            Ok(got) if got.alpha_eq(&ty) => {}
            other => return fail(format!("generator produced {other:?}, intended `{ty}`")),
        }
        match sig.parse_term(&u.to_string()) {
            Ok(back) if back == u => {}
            other => return fail(format!("round trip gave {other:?}")),
        }
        match sig.parse_type(&ty.to_string()) {
            Ok(back) if back == ty => {}
            other => return fail(format!("type round trip gave {other:?}")),
        }

        let mut cur = u.clone();
        let mut steps = 0;
        while let Some(next) = beta_step(&cur) {
            steps += 1;
            if steps > DEFAULT_FUEL {
                return fail("more than the fuel bound of steps".into());
            }
            match type_of(&ctx, &next) {
                Ok(got) if got.alpha_eq(&ty) => {}
                other => return fail(format!("step {steps} `{next}` has type {other:?}")),
            }
            cur = next;
        }
        longest = longest.max(steps);
        if steps > 0 {
            with_redex += 1;
        }
        if u.to_string().contains("}") && steps > 0 {
            type_redexes += 1;
        }

        let nf = match normalize(&u, DEFAULT_FUEL) {
            Ok(nf) => nf,
            Err(e) => return fail(format!("normalize: {e}")),
        };
        if nf != cur || !is_normal(&nf) {
            return fail(format!("normalize gave `{nf}`, stepping gave `{cur}`"));
        }
        match normalize_with(&u, DEFAULT_FUEL, Strategy::RightmostInnermost) {
            Ok(other) if other.alpha_eq(&nf) => {}
            other => return fail(format!("rightmost-innermost gave {other:?}, normal order `{nf}`")),
        }
        match nameless::normalize(&nameless::term(&u), DEFAULT_FUEL) {
            Some((expected, _)) if expected == nameless::term(&nf) => {}
            other => return fail(format!("nameless normalizer disagrees: {other:?} vs `{nf}`")),
        }
        match sig.parse_term(&nf.to_string()) {
            Ok(back) if back == nf => {}
            other => return fail(format!("normal form round trip gave {other:?}")),
        }
    }
    Ok(format!(
        "{count} terms (size <= {max_size}), {with_redex} reducible, {type_redexes} with type applications, longest reduction {longest} steps"
    ))
}

pub fn all_trees(words: &[&str], max_leaves: usize) -> Vec<SyntaxTree> {
    let mut by_size: Vec<Vec<SyntaxTree>> = vec![Vec::new(); max_leaves + 1];
    by_size[1] = words.iter().map(|w| SyntaxTree::leaf(*w)).collect();
    for n in 2..=max_leaves {
        let mut out = Vec::new();
        for left in 1..n {
            for f in &by_size[left] {
                for a in &by_size[n - left] {
                    out.push(SyntaxTree::node(f.clone(), a.clone()));
                }
            }
        }
        by_size[n] = out;
    }
    by_size.into_iter().flatten().collect()
}

/// Compares `enumerate_readings` against the brute-force composer on every
/// tree of at most `max_leaves` leaves, at each coercion depth up to
/// `max_depth`.
pub fn composer(lexicon: &Lexicon, max_leaves: usize, max_depth: usize) -> Outcome {
    let words: Vec<&str> = lexicon.entries.keys().map(String::as_str).collect();
    let trees = all_trees(&words, max_leaves);
    let oracle = oracles::Composer::new(lexicon);
    let ctx = lexicon.signature.typing_context();
    let (mut composed, mut readings_seen, mut costly) = (0, 0, 0);
    for depth in 0..=max_depth {
        let opts = ComposeOptions { max_coercions: depth, max_readings: usize::MAX, ..ComposeOptions::default() };
        for tree in &trees {
            let expected = oracle.readings(tree, depth);
            let got: BTreeMap<String, usize> = match enumerate_readings(tree, lexicon, &opts) {
                Ok(rs) => {
                    if rs.truncated() {
                        return Err(format!("{tree}: truncated"));
                    }
                    let mut map = BTreeMap::new();
                    for r in &rs.readings {
                        let sound = type_of(&ctx, &r.term).is_ok_and(|t| t == Type::prop())
                            && is_normal(&r.term)
                            && r.cost == r.coercions_used.len()
                            && normalize(&r.raw_term, DEFAULT_FUEL).is_ok_and(|n| n.alpha_eq(&r.term));
                        if !sound {
                            return Err(format!("{tree} depth {depth}: unsound reading `{}`", r.term));
                        }
                        let key = format!("{:?}", nameless::term(&r.term));
                        if map.insert(key, r.cost).is_some() {
                            return Err(format!("{tree} depth {depth}: duplicate reading `{}`", r.term));
                        }
                        costly += usize::from(r.cost > 0);
                    }
                    map
                }
                Err(ComposeError::NoReading { .. }) => BTreeMap::new(),
                Err(e) => return Err(format!("{tree}: {e}")),
            };
            if got != expected {
                return Err(format!("{tree} depth {depth}: composer {got:?}, oracle {expected:?}"));
            }
            composed += usize::from(!got.is_empty());
            readings_seen += got.len();
        }
    }
    Ok(format!(
        "{} trees x depths 0..={max_depth}: {composed} composable, {readings_seen} readings ({costly} with coercions), all agree",
        trees.len()
    ))
}

fn thetas() -> Vec<EvalConfig> {
    [(3, 5), (3, 4), (9, 10)].iter().map(|&(n, d)| EvalConfig::new(ratio(n, d)).unwrap()).collect()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn spec_c() -> GroundTerm {
    GroundTerm::Specimen(models::class())
}

fn unary(rel: &str, arg: GroundTerm) -> Formula {
    Formula::atom(rel, vec![arg])
}

/// Formulae whose value must not change when all weights are scaled.
fn battery(model: &FiniteModel) -> Vec<Formula> {
    let c = models::class();
    let x = || GroundTerm::BoundVar("x".into());
    let mut out = Vec::new();
    for p in PREDICATES {
        out.push(unary(p, spec_c()));
        out.push(Formula::not(unary(p, spec_c())));
        out.push(Formula::forall("x", c.clone(), unary(p, x())));
        out.push(Formula::exists("x", c.clone(), unary(p, x())));
        let abs = Abstraction { var: "x".into(), ty: c.clone(), body: unary(p, x()) };
        out.push(unary(p, GroundTerm::Tau(Box::new(abs.clone()))));
        out.push(unary(p, GroundTerm::Eps(Box::new(abs))));
    }
    out.push(unary("R", GroundTerm::CoerceApp("m".into(), Box::new(spec_c()))));
    for v in model.domains["float"].iter() {
        let mut atom = Formula::atom("height", vec![spec_c(), GroundTerm::Numeral(v.as_num().unwrap().clone())]);
        if let Formula::Atom(a) = &mut atom {
            a.scalar = true;
        }
        out.push(atom);
    }
    out
}

const TERM_PREDICATES: [&str; 4] = [
    "\\x:c. and (P0 x) (not (P1 x))",
    "\\x:c. or (P2 x) (R (m x))",
    "\\x:c. imp (P3 x) (P0 x)",
    "\\x:c. P1 spec{c}",
];

pub fn logic(seed: u64, count: usize) -> Outcome {
    let sig = models::signature();
    let mut gen = ModelGen::new(seed);
    let class = models::class();
    let preds: Vec<Term> = TERM_PREDICATES.iter().map(|s| sig.parse_term(s).unwrap()).collect();
    let factors = [ratio(7, 3), ratio(1, 5), ratio(1000, 1)];
    let all_thetas: Vec<EvalConfig> = [(51, 100), (3, 5), (3, 4), (9, 10), (1, 1)]
        .iter()
        .map(|&(n, d)| EvalConfig::new(ratio(n, d)).unwrap())
        .collect();
    let (mut checks, mut disjoint_fired, mut statuses) = (0usize, 0usize, BTreeSet::new());

    for i in 0..count {
        let mut model = gen.model();
        let domain: Vec<Value> = model.domains["c"].clone();
        // complements and the full class, for the non-contradiction and
        // soundness checks
        for p in PREDICATES {
            let ext = models::extension(&model, &class, p);
            model.declare_relation(&format!("non{p}"));
            for v in domain.iter().filter(|v| !ext.contains(v)) {
                model.add_tuple(&format!("non{p}"), vec![v.clone()]);
            }
        }
        for v in &domain {
            model.add_tuple("everyone", vec![v.clone()]);
        }
        let fail = |what: String| Err(format!("model #{i}: {what}"));

        for cfg in thetas() {
            for p in PREDICATES {
                let pos = eval_formula(&model, &unary(p, spec_c()), &cfg).map_err(|e| e.to_string())?;
                let neg = eval_formula(&model, &unary(&format!("non{p}"), spec_c()), &cfg).map_err(|e| e.to_string())?;
                if pos && neg {
                    return fail(format!("{p} and its complement both hold of the specimen at {:?}", cfg.theta()));
                }
                let ext = models::extension(&model, &class, p);
                let expected = oracles::weight_ratio(&model, &domain, &ext) >= *cfg.theta();
                if pos != expected {
                    return fail(format!("{p}(spec) = {pos}, brute force {expected}"));
                }
                let j = judge_extension(&model, &class, &ext, &cfg).map_err(|e| e.to_string())?;
                statuses.insert(j.status);
                let holds = matches!(j.status, Status::HoldsUniversal | Status::HoldsMost);
                if (holds && !pos) || (j.status == Status::RefutedMinority && pos) {
                    return fail(format!("judge {:?} but eval {pos} for {p}", j.status));
                }
                if j.rules.iter().any(|r| matches!(r, Rule::Disjoint(_))) {
                    disjoint_fired += 1;
                    if !j.rules.contains(&Rule::Minority) {
                        return fail(format!("Disjoint without Minority for {p}: {:?}", j.rules));
                    }
                }
                checks += 4;
            }
        }

        for cfg in &all_thetas {
            if !eval_formula(&model, &unary("everyone", spec_c()), cfg).map_err(|e| e.to_string())? {
                return fail("universal property fails of the specimen".into());
            }
            for p in PREDICATES {
                if models::extension(&model, &class, p).len() == domain.len()
                    && !eval_formula(&model, &unary(p, spec_c()), cfg).map_err(|e| e.to_string())?
                {
                    return fail(format!("{p} holds everywhere but not of the specimen"));
                }
            }
            checks += 1;
        }

        let mut previous: Option<(BigRational, BigRational)> = None;
        for cfg in &all_thetas {
            let band = specimen_band(&model, &class, "height", cfg).map_err(|e| e.to_string())?;
            let expected = oracles::band(&model, &domain, "height", cfg.theta());
            if band != expected {
                return fail(format!("band {band:?}, brute force {expected:?}"));
            }
            if let Some((lo, hi)) = &previous {
                if band.0 > *lo || band.1 < *hi {
                    return fail(format!("band narrowed from ({lo}, {hi}) to {band:?}"));
                }
            }
            previous = Some(band);
            checks += 1;
        }

        let formulas = battery(&model);
        for cfg in thetas() {
            let base: Vec<bool> =
                formulas.iter().map(|f| eval_formula(&model, f, &cfg)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let judged: Vec<_> = preds
                .iter()
                .map(|p| judge_specimen(&model, &class, p, &sig, &cfg, DEFAULT_FUEL))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for factor in &factors {
                let scaled = model.scaled(factor);
                for (f, expected) in formulas.iter().zip(&base) {
                    if eval_formula(&scaled, f, &cfg).map_err(|e| e.to_string())? != *expected {
                        return fail(format!("`{f}` changes under scaling by {factor}"));
                    }
                }
                for (p, expected) in preds.iter().zip(&judged) {
                    let got = judge_specimen(&scaled, &class, p, &sig, &cfg, DEFAULT_FUEL).map_err(|e| e.to_string())?;
                    if &got != expected {
                        return fail(format!("judgement of `{p}` changes under scaling by {factor}"));
                    }
                }
                checks += formulas.len() + preds.len();
            }
        }
    }
    Ok(format!(
        "{count} models, {checks} checks, Disjoint fired {disjoint_fired} times, statuses seen {statuses:?}"
    ))
}

pub fn choice(seed: u64, count: usize) -> Outcome {
    let sig = models::signature();
    let mut gen = ModelGen::new(seed);
    let class = models::class();
    let cfg = EvalConfig::default();
    let mut checks = 0usize;
    let x = || GroundTerm::BoundVar("x".into());
    for i in 0..count {
        let model = gen.model();
        let domain = model.domains["c"].clone();
        let fail = |what: String| Err(format!("model #{i}: {what}"));

        let mut preds: Vec<(String, Formula, BTreeSet<Value>)> = Vec::new();
        for p in PREDICATES {
            preds.push((p.to_string(), unary(p, x()), models::extension(&model, &class, p)));
        }
        for src in TERM_PREDICATES.iter().take(3) {
            let pred = sig.parse_term(src).unwrap();
            let body = normalize(&Term::app(pred, Term::var("x")), DEFAULT_FUEL).unwrap();
            let f = specimen_core::logic::extract_formula(&body, &sig).map_err(|e| e.to_string())?;
            let ext = oracles::term_extension(&model, src);
            preds.push((src.to_string(), f, ext));
        }

        for (name, body, ext) in &preds {
            let complement: BTreeSet<Value> = domain.iter().filter(|v| !ext.contains(v)).cloned().collect();
            let brute_all = ext.len() == domain.len();
            let brute_any = !ext.is_empty();
            let abs = |body: Formula| Abstraction { var: "x".into(), ty: class.clone(), body };
            let tau = GroundTerm::Tau(Box::new(abs(body.clone())));
            let eps = GroundTerm::Eps(Box::new(abs(body.clone())));
            let tau_not = GroundTerm::Tau(Box::new(abs(Formula::not(body.clone()))));
            let at = |g: GroundTerm| substitute(body, "x", &g);
            let a_tau = eval_formula(&model, &at(tau), &cfg).map_err(|e| e.to_string())?;
            let a_eps = eval_formula(&model, &at(eps.clone()), &cfg).map_err(|e| e.to_string())?;
            let a_tau_not = eval_formula(&model, &at(tau_not), &cfg).map_err(|e| e.to_string())?;
            if a_tau != brute_all {
                return fail(format!("A(tau A) = {a_tau}, forall = {brute_all} for {name}"));
            }
            if a_eps != brute_any {
                return fail(format!("A(eps A) = {a_eps}, exists = {brute_any} for {name}"));
            }
            if a_eps != a_tau_not {
                return fail(format!("A(eps A) = {a_eps}, A(tau not A) = {a_tau_not} for {name}"));
            }
            let w_eps = witness(&model, &class, ext, Mode::Eps).map_err(|e| e.to_string())?;
            let w_tau = witness(&model, &class, &complement, Mode::Tau).map_err(|e| e.to_string())?;
            if w_eps != w_tau {
                return fail(format!("eps witness {w_eps} differs from tau witness of the complement {w_tau} for {name}"));
            }
            let forall = eval_formula(&model, &Formula::forall("x", class.clone(), body.clone()), &cfg).map_err(|e| e.to_string())?;
            let exists = eval_formula(&model, &Formula::exists("x", class.clone(), body.clone()), &cfg).map_err(|e| e.to_string())?;
            if forall != brute_all || exists != brute_any {
                return fail(format!("quantifiers disagree with brute force for {name}"));
            }
            checks += 5;
        }

        for p in PREDICATES {
            let tau = format!("{p} (tau{{c}} {p})");
            let eps = format!("{p} (eps{{c}} (\\y:c. {p} y))");
            let ext = models::extension(&model, &class, p);
            let got_tau = eval_term(&model, &sig.parse_term(&tau).unwrap(), &sig, &cfg, DEFAULT_FUEL).map_err(|e| e.to_string())?;
            let got_eps = eval_term(&model, &sig.parse_term(&eps).unwrap(), &sig, &cfg, DEFAULT_FUEL).map_err(|e| e.to_string())?;
            if got_tau != (ext.len() == domain.len()) || got_eps != !ext.is_empty() {
                return fail(format!("term-level choice identities fail for {p}"));
            }
            checks += 2;
        }
    }
    Ok(format!("{count} models, {checks} identities, 100% agreement"))
}

/// Replaces the free variable `x` of `f` by `g` (binders in the battery
/// never rebind `x` below the top).
fn substitute(f: &Formula, x: &str, g: &GroundTerm) -> Formula {
    let sub = |t: &GroundTerm| match t {
        GroundTerm::BoundVar(y) if y == x => g.clone(),
        other => other.clone(),
    };
    match f {
        Formula::Atom(a) => {
            let mut a = a.clone();
            a.args = a.args.iter().map(|t| subst_ground(t, x, g, &sub)).collect();
            Formula::Atom(a)
        }
        Formula::Not(inner) => Formula::not(substitute(inner, x, g)),
        Formula::And(l, r) => Formula::And(Box::new(substitute(l, x, g)), Box::new(substitute(r, x, g))),
        Formula::Or(l, r) => Formula::Or(Box::new(substitute(l, x, g)), Box::new(substitute(r, x, g))),
        Formula::Imp(l, r) => Formula::Imp(Box::new(substitute(l, x, g)), Box::new(substitute(r, x, g))),
        Formula::Forall(y, _, _) | Formula::Exists(y, _, _) if y == x => f.clone(),
        Formula::Forall(y, t, b) => Formula::forall(y.clone(), t.clone(), substitute(b, x, g)),
        Formula::Exists(y, t, b) => Formula::exists(y.clone(), t.clone(), substitute(b, x, g)),
    }
}

fn subst_ground(t: &GroundTerm, x: &str, g: &GroundTerm, sub: &dyn Fn(&GroundTerm) -> GroundTerm) -> GroundTerm {
    match t {
        GroundTerm::CoerceApp(c, inner) => GroundTerm::CoerceApp(c.clone(), Box::new(subst_ground(inner, x, g, sub))),
        other => sub(other),
    }
}
