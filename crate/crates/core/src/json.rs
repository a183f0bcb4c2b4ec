//! JSON encodings shared by reports: rationals as `[num, den]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::algebra::{ExtRational, Scalar};

pub fn rational_json(q: &BigRational) -> Value {
    json!([bigint_json(q.numer()), bigint_json(q.denom())])
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn point_json(p: &[BigRational]) -> Value {
    Value::Array(p.iter().map(rational_json).collect())
}

/// `[num, den]`, or `null` for ∞.
pub fn ext_json(x: &ExtRational) -> Value {
    match x {
        ExtRational::Finite(q) => rational_json(q),
        ExtRational::Infinite => Value::Null,
    }
}

/// Rationals as `[num, den]`, residues as their canonical integer.
pub fn scalar_json(c: &Scalar) -> Value {
    match c {
        Scalar::Rational(q) => rational_json(q),
        Scalar::Residue { value, .. } => json!(value),
    }
}
