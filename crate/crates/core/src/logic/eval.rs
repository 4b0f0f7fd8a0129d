use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::calculus::Type;

use super::formula::{Abstraction, Atom, Formula, GroundTerm};
use super::judge::{pick, Mode};
use super::model::{FiniteModel, Value};
use super::{EvalConfig, LogicError};

pub fn eval_formula(model: &FiniteModel, f: &Formula, cfg: &EvalConfig) -> Result<bool, LogicError> {
    eval_open(model, f, cfg, &[])
}

/// Evaluates `f` with its free variables bound by `bindings`.
pub(crate) fn eval_open(
    model: &FiniteModel,
    f: &Formula,
    cfg: &EvalConfig,
    bindings: &[(String, Value)],
) -> Result<bool, LogicError> {
    Evaluator { model, cfg }.formula(f, &mut bindings.to_vec())
}

/// Central weighted quantile band of `rel` over `class`.
pub fn specimen_band(
    model: &FiniteModel,
    class: &Type,
    rel: &str,
    cfg: &EvalConfig,
) -> Result<(BigRational, BigRational), LogicError> {
    Evaluator { model, cfg }.band(class, &[], rel)
}

type Env = Vec<(String, Value)>;

struct Evaluator<'a> {
    model: &'a FiniteModel,
    cfg: &'a EvalConfig,
}

impl Evaluator<'_> {
    fn formula(&self, f: &Formula, env: &mut Env) -> Result<bool, LogicError> {
        match f {
            Formula::Atom(a) => self.atom(a, env),
            Formula::Not(g) => Ok(!self.formula(g, env)?),
            Formula::And(l, r) => Ok(self.formula(l, env)? && self.formula(r, env)?),
            Formula::Or(l, r) => Ok(self.formula(l, env)? || self.formula(r, env)?),
            Formula::Imp(l, r) => Ok(!self.formula(l, env)? || self.formula(r, env)?),
            Formula::Forall(x, ty, body) => {
                for v in self.domain(ty)? {
                    if !bound(env, x, v.clone(), |env| self.formula(body, env))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Exists(x, ty, body) => {
                for v in self.domain(ty)? {
                    if bound(env, x, v.clone(), |env| self.formula(body, env))? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn atom(&self, a: &Atom, env: &mut Env) -> Result<bool, LogicError> {
        if a.scalar && a.args.len() == 2 && !a.args[1].contains_specimen() {
            if let Some((class, coercions)) = specimen_chain(&a.args[0]) {
                let (lo, hi) = self.band(class, &coercions, &a.rel)?;
                let v = self.value(&a.args[1], env)?;
                let n = v.as_num().ok_or_else(|| LogicError::NotNumeric(v.to_string()))?;
                return Ok(&lo <= n && n <= &hi);
            }
        }

        let placeholder = format!("#spec{}", env.len());
        if let Some((args, class)) = replace_leftmost(&a.args, &placeholder) {
            let domain = self.class_domain(&class)?;
            let inner = Atom { args, ..a.clone() };
            let mut hit = BigRational::zero();
            for x in domain {
                if bound(env, &placeholder, x.clone(), |env| self.atom(&inner, env))? {
                    hit += self.model.weight(x);
                }
            }
            let total = self.model.total_weight(domain);
            return Ok(hit >= self.cfg.theta() * total);
        }

        let values = a.args.iter().map(|g| self.value(g, env)).collect::<Result<Vec<_>, _>>()?;
        if a.rel == "lt" {
            return match values.as_slice() {
                [Value::Num(l), Value::Num(r)] => Ok(l < r),
                [l, r] => Err(LogicError::NotNumeric(if l.as_num().is_none() { l } else { r }.to_string())),
                _ => Err(LogicError::NotLogicalFragment(a.to_string())),
            };
        }
        let ext = self.model.relations.get(&a.rel).ok_or_else(|| LogicError::UninterpretedSymbol(a.rel.clone()))?;
        Ok(ext.contains(&values))
    }

    fn value(&self, g: &GroundTerm, env: &mut Env) -> Result<Value, LogicError> {
        match g {
            GroundTerm::BoundVar(x) => env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| LogicError::UnboundVariable(x.clone())),
            GroundTerm::ModelConst(c) => {
                self.model.constants.get(c).cloned().ok_or_else(|| LogicError::UninterpretedSymbol(c.clone()))
            }
            GroundTerm::Numeral(n) => Ok(Value::Num(n.clone())),
            GroundTerm::CoerceApp(c, inner) => {
                let v = self.value(inner, env)?;
                self.apply(c, &v)
            }
            GroundTerm::Tau(abs) => self.choose(abs, Mode::Tau, env),
            GroundTerm::Eps(abs) => self.choose(abs, Mode::Eps, env),
            GroundTerm::Specimen(_) => Err(LogicError::NotLogicalFragment(g.to_string())),
        }
    }

    fn apply(&self, c: &str, v: &Value) -> Result<Value, LogicError> {
        let map = self.model.maps.get(c).ok_or_else(|| LogicError::UninterpretedSymbol(c.to_string()))?;
        map.get(v).cloned().ok_or_else(|| LogicError::UninterpretedSymbol(format!("{c}({v})")))
    }

    fn choose(&self, abs: &Abstraction, mode: Mode, env: &mut Env) -> Result<Value, LogicError> {
        let domain = self.domain(&abs.ty)?;
        let mut ext = BTreeSet::new();
        for v in domain {
            if bound(env, &abs.var, v.clone(), |env| self.formula(&abs.body, env))? {
                ext.insert(v.clone());
            }
        }
        Ok(pick(domain, &ext, mode).clone())
    }

    fn domain(&self, ty: &Type) -> Result<&[Value], LogicError> {
        let d = self.model.domain(ty).ok_or_else(|| LogicError::NoDomain(ty.clone()))?;
        if d.is_empty() {
            return Err(LogicError::EmptyDomain(ty.clone()));
        }
        Ok(d)
    }

    fn class_domain(&self, class: &Type) -> Result<&[Value], LogicError> {
        match class {
            Type::Base(name) if name != "t" && name != "float" => match self.model.domain(class) {
                Some([]) => Err(LogicError::EmptyDomain(class.clone())),
                Some(d) => Ok(d),
                None => Err(LogicError::SpecimenOfNonClass(class.clone())),
            },
            _ => Err(LogicError::SpecimenOfNonClass(class.clone())),
        }
    }

    /// Band of `rel` over `class`, each element viewed through `coercions`
    /// (outermost first) and weighted as a member of `class`.
    fn band(&self, class: &Type, coercions: &[&str], rel: &str) -> Result<(BigRational, BigRational), LogicError> {
        let domain = self.class_domain(class)?;
        let ext = self.model.relations.get(rel).ok_or_else(|| LogicError::UninterpretedSymbol(rel.to_string()))?;
        let mut scalar: BTreeMap<&Value, &Value> = BTreeMap::new();
        for tuple in ext {
            if let [e, v] = tuple.as_slice() {
                if scalar.insert(e, v).is_some() {
                    return Err(LogicError::ScalarNotFunctional { rel: rel.to_string(), elem: e.clone() });
                }
            }
        }

        let mut weighted: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for x in domain {
            let mut y = x.clone();
            for c in coercions.iter().rev() {
                y = self.apply(c, &y)?;
            }
            let v = scalar
                .get(&y)
                .ok_or_else(|| LogicError::MissingScalarValue { rel: rel.to_string(), elem: y.clone() })?;
            let n = v.as_num().ok_or_else(|| LogicError::NotNumeric(v.to_string()))?;
            *weighted.entry(n.clone()).or_insert_with(BigRational::zero) += self.model.weight(x);
        }

        let total: BigRational = weighted.values().sum();
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        let theta = self.cfg.theta();
        let quantile = |p: BigRational| {
            let target = p * &total;
            let mut cum = BigRational::zero();
            for (v, w) in &weighted {
                cum += w;
                if cum >= target {
                    return v.clone();
                }
            }
            unreachable!("cumulative weight reaches the total")
        };
        Ok((quantile((&one - theta) / &two), quantile((&one + theta) / &two)))
    }
}

fn bound<T>(env: &mut Env, x: &str, v: Value, k: impl FnOnce(&mut Env) -> T) -> T {
    env.push((x.to_string(), v));
    let out = k(env);
    env.pop();
    out
}

/// `spec{T}` under zero or more coercions: the class and the coercion names,
/// outermost first.
fn specimen_chain(g: &GroundTerm) -> Option<(&Type, Vec<&str>)> {
    match g {
        GroundTerm::Specimen(ty) => Some((ty, Vec::new())),
        GroundTerm::CoerceApp(c, inner) => {
            let (ty, mut chain) = specimen_chain(inner)?;
            chain.insert(0, c);
            Some((ty, chain))
        }
        _ => None,
    }
}

/// Replaces the leftmost specimen in `args` by the variable `x`.
fn replace_leftmost(args: &[GroundTerm], x: &str) -> Option<(Vec<GroundTerm>, Type)> {
    fn go(g: &GroundTerm, x: &str) -> Option<(GroundTerm, Type)> {
        match g {
            GroundTerm::Specimen(ty) => Some((GroundTerm::BoundVar(x.to_string()), ty.clone())),
            GroundTerm::CoerceApp(c, inner) => {
                go(inner, x).map(|(inner, ty)| (GroundTerm::CoerceApp(c.clone(), Box::new(inner)), ty))
            }
            _ => None,
        }
    }
    args.iter().enumerate().find_map(|(i, g)| {
        go(g, x).map(|(replaced, ty)| {
            let mut out = args.to_vec();
            out[i] = replaced;
            (out, ty)
        })
    })
}
