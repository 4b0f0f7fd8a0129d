//! Seeded random finite weighted models over one class `c`, a second type
//! `d` reached by the map `m : c -> d`, unary predicates, and heights.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specimen_core::calculus::Type;
use specimen_core::lexicon::{load_lexicon, Signature};
use specimen_core::logic::{FiniteModel, Value};

pub const PREDICATES: [&str; 4] = ["P0", "P1", "P2", "P3"];

pub const SIGNATURE: &str = "\
type c
type d
constant P0 : c -> t
constant P1 : c -> t
constant P2 : c -> t
constant P3 : c -> t
constant R : d -> t
constant m : c -> d
";

pub fn signature() -> Signature {
    load_lexicon(SIGNATURE).expect("model signature").signature
}

pub fn class() -> Type {
    Type::base("c")
}

pub struct ModelGen {
    rng: ChaCha8Rng,
}

impl ModelGen {
    pub fn new(seed: u64) -> Self {
        ModelGen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn weight(&mut self) -> BigRational {
        BigRational::new(self.rng.gen_range(1..=9).into(), self.rng.gen_range(1..=4).into())
    }

    /// Domains of at most 12 elements. Each predicate gets a density drawn
    /// per model, so ratios spread over the whole unit interval.
    pub fn model(&mut self) -> FiniteModel {
        let n = self.rng.gen_range(1..=12);
        let k = self.rng.gen_range(1..=6);
        let cs: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let ds: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
        let mut m = FiniteModel::new();
        m.add_domain("c", &cs).add_domain("d", &ds);
        let mut heights = Vec::new();
        for e in &cs {
            let v = self.rng.gen_range(0..20i64);
            heights.push(v);
            m.add_tuple("height", vec![Value::elem(e), Value::Num(BigRational::from_integer(v.into()))]);
            let img = &ds[self.rng.gen_range(0..k)];
            m.add_map_entry("m", Value::elem(e), Value::elem(img));
        }
        heights.sort_unstable();
        heights.dedup();
        m.add_domain("float", heights.iter().map(i64::to_string));
        for e in cs.iter().chain(&ds) {
            if self.rng.gen_bool(0.6) {
                let w = self.weight();
                m.set_weight(Value::elem(e), w);
            }
        }
        for p in PREDICATES {
            m.declare_relation(p);
            let density: f64 = self.rng.gen_range(0.0..=1.0);
            for e in &cs {
                if self.rng.gen_bool(density) {
                    m.add_tuple(p, vec![Value::elem(e)]);
                }
            }
        }
        m.declare_relation("R");
        for e in &ds {
            if self.rng.gen_bool(0.5) {
                m.add_tuple("R", vec![Value::elem(e)]);
            }
        }
        m
    }
}

/// Members of the unary relation `rel` within `ty`'s domain.
pub fn extension(model: &FiniteModel, ty: &Type, rel: &str) -> std::collections::BTreeSet<Value> {
    let tuples = &model.relations[rel];
    model.domain(ty).unwrap().iter().filter(|v| tuples.contains(&vec![(*v).clone()])).cloned().collect()
}
