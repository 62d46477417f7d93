//! Canonical JSON for reports: every float is rounded to 12 significant
//! digits so equal runs produce byte-identical output.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds `x` to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig12(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

/// `{"schema_version": 1, "command": ..., <body fields>}` with canonical floats.
pub fn envelope<T: Serialize>(command: &str, body: &T) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), SCHEMA_VERSION.into());
    map.insert("command".into(), command.into());
    match serde_json::to_value(body).expect("report serializes") {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    canonicalize(Value::Object(map))
}

pub fn to_canonical_string<T: Serialize>(command: &str, body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&envelope(command, body)).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig12(0.1 + 0.2), 0.3);
        assert_eq!(round_sig12(1.234_567_890_123_456e-9), 1.234_567_890_12e-9);
        assert_eq!(round_sig12(-0.0).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn envelope_adds_version_and_rounds() {
        #[derive(Serialize)]
        struct Body {
            x: f64,
            n: usize,
        }
        let v = envelope("demo", &Body { x: 2.0 / 3.0, n: 4 });
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "demo");
        assert_eq!(v["x"].as_f64().unwrap(), 0.666666666667);
        assert_eq!(v["n"], 4);
    }
}
