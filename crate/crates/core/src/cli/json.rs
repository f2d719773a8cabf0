//! JSON encoding with every number written as a decimal string.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::capitulation::CapitulationCertificate;
use crate::field::spec::{FieldElement, Maximality, NumberFieldSpec};

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn num(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn elem(x: &FieldElement) -> Value {
    Value::Array(x.coeffs().iter().map(rat).collect())
}

pub fn elems(xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(elem).collect())
}

pub fn field(f: &NumberFieldSpec) -> Value {
    json!({
        "label": f.label(),
        "defining_poly": ints(f.defining_poly().coeffs()),
        "degree": num(f.degree()),
        "discriminant": int(&f.discriminant()),
        "maximality": match f.maximality() {
            Maximality::Certified => "certified",
            Maximality::Unverified => "unverified",
        },
        "units": elems(f.declared_units()),
        "roots_of_unity": f
            .declared_roots_of_unity()
            .iter()
            .map(|(z, n)| json!({ "element": elem(z), "order": num(n) }))
            .collect::<Vec<_>>(),
    })
}

pub fn checks<'a>(named: impl IntoIterator<Item = (&'a str, bool)>) -> Value {
    Value::Object(named.into_iter().map(|(k, v)| (k.to_string(), Value::Bool(v))).collect::<Map<_, _>>())
}

pub fn certificate(c: &CapitulationCertificate, with_inverse: bool) -> Value {
    let mut unit = json!({
        "epsilon": elems(&c.unit.epsilon),
        "determinant": int(&c.unit.determinant),
        "inverse_verified": c.unit.inverse_verified,
        "congruence": c.unit.congruence,
    });
    if with_inverse {
        unit["inverse"] = elems(&c.unit.inverse);
    }
    json!({
        "m": num(c.m),
        "u": elem(&c.u),
        "t": num(c.t),
        "a": elem(&c.a),
        "b": elem(&c.b),
        "c": elem(&c.c),
        "d": elem(&c.d),
        "f": elems(&c.f),
        "product_value": elem(&c.product_value),
        "unit": unit,
        "checks": checks(c.checks.named()),
    })
}

/// A certificate without the large polynomial data.
pub fn certificate_summary(c: &CapitulationCertificate) -> Value {
    json!({
        "u": elem(&c.u),
        "t": num(c.t),
        "c": elem(&c.c),
        "d": elem(&c.d),
        "determinant": int(&c.unit.determinant),
        "checks": checks(c.checks.named()),
    })
}
