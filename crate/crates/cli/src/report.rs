//! JSON rendering of results with fixed precision.

use serde_json::{json, Map, Value};

use qg_core::hopfcore::VerificationReport;
use qg_core::tenscore::{CMatrix, CVector, C64};

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x.is_finite() { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x))
    } else {
        Value::String(x.to_string())
    }
}

pub fn complex(z: C64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn vector(v: &CVector) -> Value {
    Value::Array(v.iter().map(|&z| complex(z)).collect())
}

pub fn matrix(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn checks(r: &VerificationReport) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "residual": num(c.residual),
                    "bound": num(c.bound),
                    "passed": c.passed,
                })
            })
            .collect(),
    )
}

/// Applies [`round12`] to every number in a JSON tree.
pub fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => num(x),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&normalize(v)).expect("report serializes");
    s.push('\n');
    s
}
