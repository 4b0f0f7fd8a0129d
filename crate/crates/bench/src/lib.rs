//! Deterministic workloads shared by the benchmarks.

use specimen_core::calculus::Term;
use specimen_core::composer::{parse_tree, SyntaxTree};
use specimen_core::lexicon::{load_lexicon, Lexicon, Signature};
use specimen_core::logic::{parse_decimal, FiniteModel, Value};

const CHURCH: &str = "\
type e
constant f : e -> e
constant z : e
";

pub fn church_signature() -> Signature {
    load_lexicon(CHURCH).expect("church signature").signature
}

fn numeral(n: usize) -> String {
    let mut body = "x".to_string();
    for _ in 0..n {
        body = format!("s ({body})");
    }
    format!("(/\\a. \\s:a -> a. \\x:a. {body})")
}

/// `m * n` on Church numerals, applied to `f` and `z`; its normal form is
/// `f` iterated `m * n` times.
pub fn church_product(m: usize, n: usize) -> Term {
    let nat = "Pi a. (a -> a) -> a -> a";
    let mul = format!("(\\m:{nat}. \\n:{nat}. /\\a. \\s:a -> a. m{{a}} (n{{a}} s))");
    let src = format!("({mul} {} {}){{e}} f z", numeral(m), numeral(n));
    church_signature().parse_term(&src).expect("church term")
}

pub const ZOO: &str = include_str!("../../core/fixtures/zoo.lex");

pub fn zoo() -> Lexicon {
    load_lexicon(ZOO).expect("zoo lexicon")
}

pub fn zoo_trees() -> Vec<SyntaxTree> {
    [
        "(app tall Carlotta)",
        "(app sleeps Rex)",
        "(app tall theHumans)",
        "(app (app every sleeps) sleeps)",
    ]
    .iter()
    .map(|t| parse_tree(t).expect("tree"))
    .collect()
}

/// Signature for [`population`].
pub const POPULATION: &str = "\
type person
constant P : person -> t
constant Q : person -> t
";

pub fn population_signature() -> Signature {
    load_lexicon(POPULATION).expect("population signature").signature
}

/// `n` persons with scattered heights and weights 1 to 3. `P` holds of
/// about 4/5 of the weight and `Q` of the rest.
pub fn population(n: usize) -> FiniteModel {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut m = FiniteModel::new();
    m.add_domain("person", &names);
    let mut heights: Vec<u64> = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let h = (i as u64 * 7919) % 211;
        heights.push(h);
        m.add_tuple("height", vec![Value::elem(name), Value::from_token(&h.to_string())]);
        m.set_weight(Value::elem(name), parse_decimal(&(i % 3 + 1).to_string()).expect("weight"));
        let rel = if i % 5 == 4 { "Q" } else { "P" };
        m.add_tuple(rel, vec![Value::elem(name)]);
    }
    m.declare_relation("P").declare_relation("Q");
    heights.sort_unstable();
    heights.dedup();
    m.add_domain("float", heights.iter().map(u64::to_string));
    m
}
