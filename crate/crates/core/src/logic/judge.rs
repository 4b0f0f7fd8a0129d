use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use crate::calculus::{fresh_name, normalize, type_of, Term, Type};
use crate::lexicon::Signature;

use super::eval::eval_open;
use super::extract::extract_formula;
use super::model::{FiniteModel, Value};
use super::{EvalConfig, LogicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    HoldsUniversal,
    HoldsMost,
    RefutedMinority,
    RefutedDisjoint,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Universal,
    Most,
    Minority,
    /// A unary relation of majority weight, disjoint from the predicate.
    Disjoint(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgement {
    /// The first applicable rule in the order of [`Status`].
    pub status: Status,
    pub rules: BTreeSet<Rule>,
    /// Weight of the predicate's extension over the weight of the class.
    pub ratio: BigRational,
    /// Ratio of each relation behind a `Disjoint` rule.
    pub disjoint_ratios: BTreeMap<String, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Least element falsifying the predicate, else the least element.
    Tau,
    /// Least element satisfying the predicate, else the least element.
    Eps,
}

pub(crate) fn pick<'a>(domain: &'a [Value], ext: &BTreeSet<Value>, mode: Mode) -> &'a Value {
    let wanted = mode == Mode::Eps;
    domain.iter().find(|v| ext.contains(*v) == wanted).unwrap_or(&domain[0])
}

pub fn witness(model: &FiniteModel, class: &Type, ext: &BTreeSet<Value>, mode: Mode) -> Result<Value, LogicError> {
    let domain = model.domain(class).ok_or_else(|| LogicError::NoDomain(class.clone()))?;
    if domain.is_empty() {
        return Err(LogicError::EmptyDomain(class.clone()));
    }
    Ok(pick(domain, ext, mode).clone())
}

/// Elements of `class` satisfying `predicate : class -> t`.
pub fn predicate_extension(
    model: &FiniteModel,
    class: &Type,
    predicate: &Term,
    sig: &Signature,
    cfg: &EvalConfig,
    fuel: usize,
) -> Result<BTreeSet<Value>, LogicError> {
    let ty = type_of(&sig.typing_context(), predicate).map_err(|e| LogicError::IllTyped(e.to_string()))?;
    if ty != Type::arrow(class.clone(), Type::prop()) {
        return Err(LogicError::IllTyped(format!("predicate has type `{ty}`, expected `{class} -> t`")));
    }
    let domain = model.domain(class).ok_or_else(|| LogicError::NoDomain(class.clone()))?;
    let mut names = predicate.free_vars();
    names.extend(predicate.constants());
    let x = fresh_name("x", |n| names.contains(n));
    let body = normalize(&Term::app(predicate.clone(), Term::var(&x)), fuel)?;
    let formula = extract_formula(&body, sig)?;
    let mut ext = BTreeSet::new();
    for v in domain {
        if eval_open(model, &formula, cfg, &[(x.clone(), v.clone())])? {
            ext.insert(v.clone());
        }
    }
    Ok(ext)
}

pub fn judge_specimen(
    model: &FiniteModel,
    class: &Type,
    predicate: &Term,
    sig: &Signature,
    cfg: &EvalConfig,
    fuel: usize,
) -> Result<Judgement, LogicError> {
    let ext = predicate_extension(model, class, predicate, sig, cfg, fuel)?;
    judge_extension(model, class, &ext, cfg)
}

/// Assertion and refutation rules for a predicate given by its extension.
pub fn judge_extension(
    model: &FiniteModel,
    class: &Type,
    ext: &BTreeSet<Value>,
    cfg: &EvalConfig,
) -> Result<Judgement, LogicError> {
    let domain = model.domain(class).ok_or_else(|| LogicError::NoDomain(class.clone()))?;
    if domain.is_empty() {
        return Err(LogicError::EmptyDomain(class.clone()));
    }
    let total = model.total_weight(domain);
    let ratio_of = |pred: &dyn Fn(&Value) -> bool| model.total_weight(domain.iter().filter(|v| pred(v))) / &total;
    let theta = cfg.theta();

    let ratio = ratio_of(&|v| ext.contains(v));
    let mut rules = BTreeSet::new();
    if ratio.is_one() {
        rules.insert(Rule::Universal);
    }
    if &ratio >= theta {
        rules.insert(Rule::Most);
    }
    if ratio <= BigRational::one() - theta {
        rules.insert(Rule::Minority);
    }

    let mut disjoint_ratios = BTreeMap::new();
    for (name, tuples) in &model.relations {
        let members: BTreeSet<&Value> = tuples.iter().filter_map(|t| if let [v] = t.as_slice() { Some(v) } else { None }).collect();
        if members.is_empty() || domain.iter().any(|v| ext.contains(v) && members.contains(v)) {
            continue;
        }
        let q = ratio_of(&|v| members.contains(v));
        if &q >= theta {
            rules.insert(Rule::Disjoint(name.clone()));
            disjoint_ratios.insert(name.clone(), q);
        }
    }

    // a disjoint majority bounds the ratio by 1 - θ, so Disjoint never
    // fires without Minority and RefutedDisjoint only ranks below it
    let status = if rules.contains(&Rule::Universal) {
        Status::HoldsUniversal
    } else if rules.contains(&Rule::Most) {
        Status::HoldsMost
    } else if rules.contains(&Rule::Minority) {
        Status::RefutedMinority
    } else if rules.iter().any(|r| matches!(r, Rule::Disjoint(_))) {
        Status::RefutedDisjoint
    } else {
        Status::Unknown
    };
    Ok(Judgement { status, rules, ratio, disjoint_ratios })
}
