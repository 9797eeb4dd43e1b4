//! Fixed-precision serialization for reproducible artifacts.
//!
//! Every float written to an artifact is rounded to six significant digits.
//! Computation keeps full precision.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Rounds to six significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Rounds every float in a JSON tree to six significant digits.
pub fn round_value(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(sig6(f)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with sorted object keys, rounded floats and a trailing newline.
pub fn to_artifact_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
