use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::calculus::Type;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Type, Box<Formula>),
    Exists(String, Type, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub rel: String,
    pub type_args: Vec<Type>,
    pub args: Vec<GroundTerm>,
    /// The relation is flagged scalar in the signature.
    pub scalar: bool,
}

/// A predicate with one hole, the body of `tau`/`eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abstraction {
    pub var: String,
    pub ty: Type,
    pub body: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroundTerm {
    BoundVar(String),
    ModelConst(String),
    Specimen(Type),
    Tau(Box<Abstraction>),
    Eps(Box<Abstraction>),
    CoerceApp(String, Box<GroundTerm>),
    Numeral(BigRational),
}

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<GroundTerm>) -> Formula {
        Formula::Atom(Atom { rel: rel.into(), type_args: Vec::new(), args, scalar: false })
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn forall(var: impl Into<String>, ty: Type, body: Formula) -> Formula {
        Formula::Forall(var.into(), ty, Box::new(body))
    }

    pub fn exists(var: impl Into<String>, ty: Type, body: Formula) -> Formula {
        Formula::Exists(var.into(), ty, Box::new(body))
    }

    /// S-expression rendering, e.g. `(love (spec brits) France)`.
    pub fn to_sexpr(&self) -> String {
        match self {
            Formula::Atom(a) => {
                if a.args.is_empty() {
                    a.rel.clone()
                } else {
                    let args: Vec<String> = a.args.iter().map(GroundTerm::to_sexpr).collect();
                    format!("({} {})", a.rel, args.join(" "))
                }
            }
            Formula::Not(f) => format!("(not {})", f.to_sexpr()),
            Formula::And(l, r) => format!("(and {} {})", l.to_sexpr(), r.to_sexpr()),
            Formula::Or(l, r) => format!("(or {} {})", l.to_sexpr(), r.to_sexpr()),
            Formula::Imp(l, r) => format!("(imp {} {})", l.to_sexpr(), r.to_sexpr()),
            Formula::Forall(x, ty, b) => format!("(forall ({x} {ty}) {})", b.to_sexpr()),
            Formula::Exists(x, ty, b) => format!("(exists ({x} {ty}) {})", b.to_sexpr()),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(_) | Formula::Not(_) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }
}

impl GroundTerm {
    pub fn numeral(text: &str) -> Option<GroundTerm> {
        parse_decimal(text).map(GroundTerm::Numeral)
    }

    pub fn contains_specimen(&self) -> bool {
        match self {
            GroundTerm::Specimen(_) => true,
            GroundTerm::CoerceApp(_, g) => g.contains_specimen(),
            _ => false,
        }
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            GroundTerm::BoundVar(x) | GroundTerm::ModelConst(x) => x.clone(),
            GroundTerm::Specimen(ty) => format!("(spec {ty})"),
            GroundTerm::Tau(a) => format!("(tau ({} {}) {})", a.var, a.ty, a.body.to_sexpr()),
            GroundTerm::Eps(a) => format!("(eps ({} {}) {})", a.var, a.ty, a.body.to_sexpr()),
            GroundTerm::CoerceApp(c, g) => format!("({c} {})", g.to_sexpr()),
            GroundTerm::Numeral(n) => format_decimal(n),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(inner) => {
                f.write_str("not ")?;
                inner.fmt_operand(f)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                let op = match self {
                    Formula::And(..) => "and",
                    Formula::Or(..) => "or",
                    _ => "imp",
                };
                l.fmt_operand(f)?;
                write!(f, " {op} ")?;
                r.fmt_operand(f)
            }
            Formula::Forall(x, ty, b) => write!(f, "forall {x}:{ty}. {b}"),
            Formula::Exists(x, ty, b) => write!(f, "exists {x}:{ty}. {b}"),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rel)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundTerm::BoundVar(x) | GroundTerm::ModelConst(x) => f.write_str(x),
            GroundTerm::Specimen(ty) => write!(f, "spec[{ty}]"),
            GroundTerm::Tau(a) => write!(f, "tau[{}]({}. {})", a.ty, a.var, a.body),
            GroundTerm::Eps(a) => write!(f, "eps[{}]({}. {})", a.ty, a.var, a.body),
            GroundTerm::CoerceApp(c, g) => write!(f, "{c}({g})"),
            GroundTerm::Numeral(n) => f.write_str(&format_decimal(n)),
        }
    }
}

/// Exact value of a decimal literal such as `95`, `0.75` or `-1.5`.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if body.contains('.') && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let value = BigRational::new(digits, scale);
    Some(if neg { -value } else { value })
}

/// Decimal rendering when the expansion terminates, `p/q` otherwise.
pub fn format_decimal(value: &BigRational) -> String {
    if value.is_integer() {
        return value.to_integer().to_string();
    }
    let mut den = value.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * BigRational::from_integer(BigInt::from(10u32).pow(places));
    let digits = scaled.to_integer();
    let neg = digits < BigInt::zero();
    let s = if neg { (-digits).to_string() } else { digits.to_string() };
    let s = format!("{s:0>width$}", width = places as usize + 1);
    let (int, frac) = s.split_at(s.len() - places as usize);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}
