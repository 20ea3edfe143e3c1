use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

/// The single JSON document a command prints.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub version: &'static str,
    /// Every parameter in effect, defaults included.
    pub config: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorPayload>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorPayload {
    pub kind: String,
    pub message: String,
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub(crate) fn start() -> Self {
        Timer(Instant::now())
    }

    pub(crate) fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// Rounds to 9 significant digits.
pub fn round_sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("scientific notation parses")
}

/// Applies [`round_sig9`] to every non-integer number in a JSON tree.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig9(n.as_f64().unwrap());
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_floats(v)))
                .collect::<Map<_, _>>(),
        ),
        other => other,
    }
}

impl RunReport {
    /// Pretty JSON with all floats rounded.
    pub fn to_json(&self) -> String {
        let value = round_floats(serde_json::to_value(self).expect("report serializes"));
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}
