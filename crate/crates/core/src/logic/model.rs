//! Finite weighted models.
//!
//! ```text
//! type 2yoGirl = carlotta g1 g2
//! type float = 80 81 95
//! weight g1 2
//! const Carlotta = carlotta
//! rel height carlotta 95
//! map h carlotta = carlotta_h
//! ```
//!
//! Element ids are global. Numerals denote themselves and only populate
//! `float`. A `rel` line with no elements declares the relation (and makes a
//! nullary relation true).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::calculus::Type;
use crate::lexicon::Signature;

use super::formula::{format_decimal, parse_decimal};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Elem(String),
    Num(BigRational),
}

impl Value {
    pub fn elem(id: impl Into<String>) -> Value {
        Value::Elem(id.into())
    }

    /// A numeral token denotes a number, anything else an element id.
    pub fn from_token(token: &str) -> Value {
        match parse_decimal(token) {
            Some(n) => Value::Num(n),
            None => Value::Elem(token.to_string()),
        }
    }

    pub fn as_num(&self) -> Option<&BigRational> {
        match self {
            Value::Num(n) => Some(n),
            Value::Elem(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(id) => f.write_str(id),
            Value::Num(n) => f.write_str(&format_decimal(n)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteModel {
    /// Base type name to its elements, in domain order.
    pub domains: BTreeMap<String, Vec<Value>>,
    /// Element weights; absent means 1.
    pub weights: BTreeMap<Value, BigRational>,
    pub constants: BTreeMap<String, Value>,
    pub relations: BTreeMap<String, BTreeSet<Vec<Value>>>,
    pub maps: BTreeMap<String, BTreeMap<Value, Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("constant `{0}` is not declared in the signature")]
    UndeclaredConstant(String),
    #[error("constant `{name}` denotes `{value}`, which is not in the domain of `{ty}`")]
    ConstantOutsideDomain { name: String, value: Value, ty: Type },
    #[error("map `{name}` is not total: `{missing}` has no image")]
    MapNotTotal { name: String, missing: Value },
    #[error("map `{name}` sends `{from}` to `{to}`, outside its target type")]
    MapOutsideTarget { name: String, from: Value, to: Value },
    #[error("map `{name}` must interpret a constant of type `A -> B` between base types with domains")]
    BadMap { name: String },
    #[error("scalar relation `{rel}` relates `{elem}` to several numerals")]
    ScalarNotFunctional { rel: String, elem: Value },
    #[error("scalar relation `{rel}` has a tuple that is not `(element, numeral)`")]
    ScalarShape { rel: String },
}

impl FiniteModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_domain<I, S>(&mut self, ty: &str, elements: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let elems = elements.into_iter().map(|e| Value::from_token(e.as_ref())).collect();
        self.domains.insert(ty.to_string(), elems);
        self
    }

    pub fn set_weight(&mut self, elem: Value, weight: BigRational) -> &mut Self {
        self.weights.insert(elem, weight);
        self
    }

    pub fn add_constant(&mut self, name: &str, value: Value) -> &mut Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    pub fn declare_relation(&mut self, rel: &str) -> &mut Self {
        self.relations.entry(rel.to_string()).or_default();
        self
    }

    pub fn add_tuple(&mut self, rel: &str, tuple: Vec<Value>) -> &mut Self {
        self.relations.entry(rel.to_string()).or_default().insert(tuple);
        self
    }

    pub fn add_map_entry(&mut self, name: &str, from: Value, to: Value) -> &mut Self {
        self.maps.entry(name.to_string()).or_default().insert(from, to);
        self
    }

    pub fn weight(&self, v: &Value) -> BigRational {
        self.weights.get(v).cloned().unwrap_or_else(BigRational::one)
    }

    pub fn total_weight<'a>(&self, elems: impl IntoIterator<Item = &'a Value>) -> BigRational {
        elems.into_iter().fold(BigRational::zero(), |acc, v| acc + self.weight(v))
    }

    /// Domain of a base type.
    pub fn domain(&self, ty: &Type) -> Option<&[Value]> {
        match ty {
            Type::Base(name) => self.domains.get(name).map(Vec::as_slice),
            _ => None,
        }
    }

    /// Same model with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: &BigRational) -> FiniteModel {
        let mut out = self.clone();
        for elems in self.domains.values() {
            for e in elems {
                out.weights.insert(e.clone(), self.weight(e) * factor);
            }
        }
        out
    }

    /// Checks the model against the constants and scalar flags of `sig`.
    pub fn validate(&self, sig: &Signature) -> Result<(), ModelError> {
        for (name, value) in &self.constants {
            let ty = sig.constant_type(name).ok_or_else(|| ModelError::UndeclaredConstant(name.clone()))?;
            let inside = match (ty, value) {
                (Type::Base(b), Value::Num(_)) if b == "float" => true,
                _ => self.domain(ty).is_some_and(|d| d.contains(value)),
            };
            if !inside {
                return Err(ModelError::ConstantOutsideDomain { name: name.clone(), value: value.clone(), ty: ty.clone() });
            }
        }
        for (name, map) in &self.maps {
            let bad = || ModelError::BadMap { name: name.clone() };
            let Some(Type::Arrow(src, dst)) = sig.constant_type(name) else { return Err(bad()) };
            let (Some(src), Some(dst)) = (self.domain(src), self.domain(dst)) else { return Err(bad()) };
            for e in src {
                match map.get(e) {
                    None => return Err(ModelError::MapNotTotal { name: name.clone(), missing: e.clone() }),
                    Some(img) if !dst.contains(img) => {
                        return Err(ModelError::MapOutsideTarget { name: name.clone(), from: e.clone(), to: img.clone() });
                    }
                    Some(_) => {}
                }
            }
        }
        for rel in &sig.scalar_relations {
            let Some(tuples) = self.relations.get(rel) else { continue };
            let mut seen = BTreeSet::new();
            for tuple in tuples {
                match tuple.as_slice() {
                    [e @ Value::Elem(_), Value::Num(_)] => {
                        if !seen.insert(e) {
                            return Err(ModelError::ScalarNotFunctional { rel: rel.clone(), elem: e.clone() });
                        }
                    }
                    _ => return Err(ModelError::ScalarShape { rel: rel.clone() }),
                }
            }
        }
        Ok(())
    }
}

pub fn parse_model(text: &str) -> Result<FiniteModel, ModelError> {
    let mut model = FiniteModel::new();
    let mut owner: BTreeMap<String, String> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ModelError::Syntax { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let known = |tok: &str, owner: &BTreeMap<String, String>| -> Result<Value, ModelError> {
            let v = Value::from_token(tok);
            match &v {
                Value::Elem(id) if !owner.contains_key(id) => Err(err(format!("unknown element `{id}`"))),
                _ => Ok(v),
            }
        };
        match words.as_slice() {
            ["type", ty, "=", elems @ ..] => {
                if model.domains.contains_key(*ty) {
                    return Err(err(format!("type `{ty}` declared twice")));
                }
                if elems.is_empty() {
                    return Err(err(format!("type `{ty}` has an empty domain")));
                }
                let mut values = Vec::new();
                for e in elems {
                    let v = Value::from_token(e);
                    match (&v, *ty == "float") {
                        (Value::Num(_), true) => {}
                        (Value::Elem(id), false) => {
                            if let Some(prev) = owner.insert(id.clone(), ty.to_string()) {
                                return Err(err(format!("element `{id}` already belongs to `{prev}`")));
                            }
                        }
                        (_, true) => return Err(err(format!("`{e}` is not a numeral"))),
                        (_, false) => return Err(err(format!("numeral `{e}` outside `float`"))),
                    }
                    if values.contains(&v) {
                        return Err(err(format!("element `{e}` listed twice")));
                    }
                    values.push(v);
                }
                model.domains.insert(ty.to_string(), values);
            }
            ["weight", elem, w] => {
                let v = known(elem, &owner)?;
                let w = parse_decimal(w).ok_or_else(|| err(format!("`{w}` is not a decimal")))?;
                if w <= BigRational::zero() {
                    return Err(err(format!("weight of `{elem}` must be positive")));
                }
                model.weights.insert(v, w);
            }
            ["const", name, "=", elem] => {
                let v = known(elem, &owner)?;
                model.constants.insert(name.to_string(), v);
            }
            ["rel", name, elems @ ..] => {
                let tuple = elems.iter().map(|e| known(e, &owner)).collect::<Result<Vec<_>, _>>()?;
                model.relations.entry(name.to_string()).or_default().insert(tuple);
            }
            ["map", name, from, "=", to] => {
                let (from, to) = (known(from, &owner)?, known(to, &owner)?);
                let map = model.maps.entry(name.to_string()).or_default();
                if map.insert(from.clone(), to).is_some() {
                    return Err(err(format!("map `{name}` has two images for `{from}`")));
                }
            }
            _ => return Err(err(format!("cannot parse `{content}`"))),
        }
    }
    Ok(model)
}
