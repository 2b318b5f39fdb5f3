//! Deterministic text rendering of results.

use serde_json::Value;

/// Rounds to 12 significant digits. The shortest representation of the
/// rounded value is what gets printed, so output is stable across runs.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn fmt_num(x: f64) -> String {
    format!("{}", round12(x))
}

/// Applies [`round12`] to every float in a JSON tree.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap_or_default());
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Header lines embedded in every CSV output.
pub fn csv_preamble(config_sha256: &str, extra: &[(&str, String)]) -> String {
    let mut s = format!(
        "# tool: {} {}\n# config_sha256: {config_sha256}\n",
        crate::TOOL_NAME,
        crate::TOOL_VERSION
    );
    for (k, v) in extra {
        s.push_str(&format!("# {k}: {v}\n"));
    }
    s
}
