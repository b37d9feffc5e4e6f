//! JSON forms of the library types. Integers of any size are emitted as
//! JSON numbers; rational coefficients of morphisms as decimal strings.

use std::str::FromStr;

use flagtangle_core::flags::{GradedSet, PartialRuling};
use flagtangle_core::functor::Report;
use flagtangle_core::hcat::HMorphism;
use flagtangle_core::ring::{ExactRational, SkeinScalar};
use flagtangle_core::tangle::{CrossingRole, SkeinVector, TangleRuling};
use serde_json::{json, Number, Value};

fn big(n: &impl ToString) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integers are valid JSON numbers"))
}

pub fn scalar(s: &SkeinScalar) -> Value {
    json!({
        "coeffs": s.coeffs().iter().map(big).collect::<Vec<_>>(),
        "lowExp": s.low_exp(),
        "denomPow": s.denom_pow(),
    })
}

pub fn set(x: &GradedSet) -> Value {
    json!({ "degrees": x.degrees() })
}

/// Pairs are 1-based and ordered by their upper end.
pub fn ruling(r: &PartialRuling) -> Value {
    let pairs: Vec<[usize; 2]> = r.pairs().iter().map(|&(o, c)| [o + 1, c + 1]).collect();
    json!({ "pairs": pairs })
}

pub fn rational(c: &ExactRational) -> Value {
    json!({ "num": c.numer().to_string(), "den": c.denom().to_string() })
}

pub fn morphism(m: &HMorphism) -> Value {
    let terms: Vec<Value> = m.terms().iter().map(|(k, c)| json!({ "key": ruling(k), "coeff": rational(c) })).collect();
    json!({ "q": m.q(), "src": set(m.src()), "dst": set(m.dst()), "terms": terms })
}

pub fn skein_vector(v: &SkeinVector) -> Value {
    let terms: Vec<Value> = v.terms.iter().map(|(r, c)| json!({ "ruling": ruling(r), "coeff": scalar(c) })).collect();
    json!({ "src": set(&v.src), "terms": terms })
}

pub fn role_name(r: CrossingRole) -> &'static str {
    match r {
        CrossingRole::Plain => "plain",
        CrossingRole::Switch => "switch",
        CrossingRole::Departure => "departure",
        CrossingRole::Return => "return",
    }
}

pub fn tangle_ruling(t: &TangleRuling) -> Value {
    json!({
        "boundary": ruling(&t.boundary),
        "weight": scalar(&t.weight),
        "roles": t.roles.iter().map(|&r| role_name(r)).collect::<Vec<_>>(),
    })
}

pub fn report(r: &Report) -> Value {
    let failures: Vec<Value> =
        r.failures.iter().map(|f| json!({ "input": f.input, "lhs": f.lhs, "rhs": f.rhs })).collect();
    json!({ "check": r.check, "instances": r.instances, "failures": failures })
}
