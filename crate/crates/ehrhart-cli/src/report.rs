//! JSON fragments for machine-readable run reports.
//!
//! Every number is emitted exactly: integers ride on serde_json's
//! arbitrary-precision numbers, rationals as `[numerator, denominator]`
//! pairs. Reports never contain floating point.

use ehrhart::counting::DeltaVector;
use ehrhart::{Polynomial, Rat, RootInterval};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

pub fn big_json(x: &BigInt) -> Value {
    let n: Number = x
        .to_string()
        .parse()
        .expect("integer string is a valid JSON number");
    Value::Number(n)
}

/// `[numerator, denominator]`, both exact.
pub fn rat_json(r: &Rat) -> Value {
    Value::Array(vec![big_json(r.numer()), big_json(r.denom())])
}

/// Coefficient pairs ascending by degree plus the display string.
pub fn poly_json(p: &Polynomial) -> Value {
    let coeffs: Vec<Value> = p
        .to_coeff_pairs()
        .iter()
        .map(|(n, d)| Value::Array(vec![big_json(n), big_json(d)]))
        .collect();
    json!({
        "coeffs": coeffs,
        "display": p.to_string(),
    })
}

pub fn delta_json(d: &DeltaVector) -> Value {
    Value::Array(d.entries().iter().map(big_json).collect())
}

pub fn interval_json(iv: &RootInterval) -> Value {
    json!({
        "lo": rat_json(&iv.lo),
        "hi": rat_json(&iv.hi),
    })
}

pub fn check_json(name: &str, pass: bool) -> Value {
    json!({
        "name": name,
        "verdict": if pass { "pass" } else { "fail" },
    })
}
