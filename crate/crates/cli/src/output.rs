//! JSON and text rendering of computed objects.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use semicurve_core::lattice::ExponentVec;
use semicurve_core::poly::{Coefficient, MultiPoly, QLaurent};
use semicurve_core::report::{self, Check};
use semicurve_core::semigroup::{ValueSemigroup, XiMatrix};

pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => Value::from(k),
        None => Value::from(n.to_string()),
    }
}

pub fn exps(e: &ExponentVec) -> Value {
    Value::from(e.as_slice().to_vec())
}

/// `Σ c_k Q^k` as `[[k, c_k], …]`.
pub fn laurent(q: &QLaurent) -> Value {
    Value::Array(q.terms().map(|(e, c)| json!([e, int(c)])).collect())
}

pub trait JsonCoeff: Coefficient {
    fn to_json(&self) -> Value;
}

impl JsonCoeff for BigInt {
    fn to_json(&self) -> Value {
        int(self)
    }
}

impl JsonCoeff for QLaurent {
    fn to_json(&self) -> Value {
        laurent(self)
    }
}

/// Terms in graded-lex order, plus the certified window of a truncated series.
pub fn poly<C: JsonCoeff>(p: &MultiPoly<C>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!([c.to_json(), exps(e)]))
        .collect();
    let mut out = Map::new();
    out.insert("nvars".into(), Value::from(p.nvars()));
    out.insert("terms".into(), Value::Array(terms));
    out.insert("exact".into(), Value::from(p.is_exact()));
    if let Some(w) = p.window() {
        out.insert(
            "window".into(),
            json!({"lo": exps(&w.lo), "hi": exps(&w.hi), "bounded_below": w.bounded_below}),
        );
    }
    Value::Object(out)
}

pub fn semigroup(s: &ValueSemigroup) -> Value {
    let points: Vec<Value> = s.points().map(|p| exps(&p)).collect();
    json!({"branches": s.branches(), "conductor": exps(s.conductor()), "points": points})
}

pub fn xi(m: &XiMatrix) -> Value {
    Value::from(m.rows().to_vec())
}

pub fn xi_text(m: &XiMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn value(v: &report::Value) -> Value {
    match v {
        report::Value::Int(n) => int(n),
        report::Value::Laurent(q) => laurent(q),
        report::Value::Text(s) => Value::from(s.clone()),
    }
}

pub fn check(c: &Check) -> Value {
    let witness = match &c.witness {
        None => Value::Null,
        Some(w) => json!({
            "at": w.at.as_ref().map(exps),
            "expected": value(&w.expected),
            "actual": value(&w.actual),
        }),
    };
    json!({"name": c.name, "status": c.status.to_string(), "detail": c.detail, "witness": witness})
}

pub fn points_text(s: &ValueSemigroup) -> String {
    s.points()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
