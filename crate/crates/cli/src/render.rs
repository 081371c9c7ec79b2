//! Canonical JSON rendering of library values.
//!
//! Integers become JSON numbers with their full decimal expansion, rationals
//! become `"p/q"` strings with `q > 0`. Object keys come out sorted because
//! `serde_json::Map` is ordered.

use std::str::FromStr;

use mukai_core::{BigRational, IntMatrix, IntVector, LineClass, PointedSublattice, RatVector};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(
        Number::from_str(&x.to_string()).expect("decimal integers are valid JSON numbers"),
    )
}

pub fn rational_string(q: &BigRational) -> String {
    // BigRational is kept reduced with a positive denominator.
    format!("{}/{}", q.numer(), q.denom())
}

pub fn vector_value(x: &IntVector) -> Value {
    Value::Array(x.coords().iter().map(int_value).collect())
}

pub fn rat_vector_value(x: &RatVector) -> Value {
    Value::Array(
        x.coords()
            .iter()
            .map(|q| Value::String(rational_string(q)))
            .collect(),
    )
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| vector_value(&m.row_vector(i)))
            .collect(),
    )
}

pub fn vectors_value(xs: &[IntVector]) -> Value {
    Value::Array(xs.iter().map(vector_value).collect())
}

pub fn ints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

/// Builds an object from `(key, value)` pairs.
pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

pub fn line_class_value(lc: &LineClass) -> Value {
    object([
        ("R", rat_vector_value(&lc.r)),
        ("square", Value::String(rational_string(&lc.square))),
        ("disc_order", int_value(&lc.disc_order)),
        (
            "two_R",
            lc.doubled().map_or(Value::Null, |d| vector_value(&d)),
        ),
    ])
}

pub fn pointed_value(h: &PointedSublattice) -> Value {
    object([
        ("basis", matrix_value(h.basis())),
        ("gram2", matrix_value(h.gram2())),
    ])
}
