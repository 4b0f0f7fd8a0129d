//! First-order formulae extracted from normal terms, finite weighted models,
//! "most of" specimen semantics and the assertion/refutation judgements.

mod eval;
mod extract;
mod formula;
mod judge;
mod model;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::calculus::{normalize, type_of, FuelExhausted, Term, Type};
use crate::lexicon::Signature;

pub use eval::{eval_formula, specimen_band};
pub use extract::extract_formula;
pub use formula::{format_decimal, parse_decimal, Abstraction, Atom, Formula, GroundTerm};
pub use judge::{judge_extension, judge_specimen, predicate_extension, witness, Judgement, Mode, Rule, Status};
pub use model::{parse_model, FiniteModel, ModelError, Value};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("term is outside the logical fragment: `{0}`")]
    NotLogicalFragment(String),
    #[error("`{0}` has no interpretation in the model")]
    UninterpretedSymbol(String),
    #[error("spec{{{0}}} does not denote a class with a domain")]
    SpecimenOfNonClass(Type),
    #[error("type `{0}` has no domain in the model")]
    NoDomain(Type),
    #[error("the domain of `{0}` is empty")]
    EmptyDomain(Type),
    #[error("`{elem}` has no value for scalar relation `{rel}`")]
    MissingScalarValue { rel: String, elem: Value },
    #[error("`{elem}` has several values for scalar relation `{rel}`")]
    ScalarNotFunctional { rel: String, elem: Value },
    #[error("`{0}` is not a numeral")]
    NotNumeric(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("threshold {0} is outside (0.5, 1]")]
    ThetaOutOfRange(String),
    #[error("ill-typed input: {0}")]
    IllTyped(String),
    #[error(transparent)]
    Fuel(#[from] FuelExhausted),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The most-of threshold θ, with 1/2 < θ ≤ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    theta: BigRational,
}

impl EvalConfig {
    pub fn new(theta: BigRational) -> Result<Self, LogicError> {
        let half = BigRational::new(1.into(), 2.into());
        if theta <= half || theta > BigRational::one() {
            return Err(LogicError::ThetaOutOfRange(format_decimal(&theta)));
        }
        Ok(EvalConfig { theta })
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { theta: BigRational::new(3.into(), 4.into()) }
    }
}

/// Reads a threshold written as a decimal (`0.75`) or a fraction (`3/4`).
pub fn parse_theta(text: &str) -> Result<EvalConfig, LogicError> {
    let bad = || LogicError::ThetaOutOfRange(text.to_string());
    let theta = match text.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_decimal(n.trim()).ok_or_else(bad)?, parse_decimal(d.trim()).ok_or_else(bad)?);
            if d.is_zero() {
                return Err(bad());
            }
            n / d
        }
        None => parse_decimal(text.trim()).ok_or_else(bad)?,
    };
    EvalConfig::new(theta)
}

/// Normalizes a closed term of type `t`, extracts it and evaluates it.
pub fn eval_term(
    model: &FiniteModel,
    u: &Term,
    sig: &Signature,
    cfg: &EvalConfig,
    fuel: usize,
) -> Result<bool, LogicError> {
    let ty = type_of(&sig.typing_context(), u).map_err(|e| LogicError::IllTyped(e.to_string()))?;
    if ty != Type::prop() {
        return Err(LogicError::IllTyped(format!("`{u}` has type `{ty}`, not `t`")));
    }
    let formula = extract_formula(&normalize(u, fuel)?, sig)?;
    eval_formula(model, &formula, cfg)
}
