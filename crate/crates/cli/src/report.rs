use narayana_core::QPoly;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub verdict: Verdict,
    pub value: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn value(command: &str, parameters: Map<String, Value>, value: Value) -> Self {
        Report {
            command: command.into(),
            parameters,
            verdict: Verdict::Value,
            value,
            witnesses: Vec::new(),
            timing_ms: None,
        }
    }

    /// Pass when `witnesses` is empty, fail otherwise.
    pub fn check(command: &str, parameters: Map<String, Value>, value: Value, witnesses: Vec<Value>) -> Self {
        Report {
            verdict: if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail },
            witnesses,
            ..Report::value(command, parameters, value)
        }
    }
}

/// What a command produces; the caller picks the rendering.
pub struct Output {
    pub report: Report,
    pub text: String,
    /// CSV rows, header first
    pub table: Vec<Vec<String>>,
    pub dot: Option<String>,
}

/// An exact JSON number for any integer.
pub fn big(x: impl ToString) -> Value {
    Value::Number(x.to_string().parse().expect("integer literal is a JSON number"))
}

/// Ascending coefficient array, index = exponent.
pub fn poly_to_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

pub fn poly_from_json(v: &Value) -> Option<QPoly> {
    let coeffs = v
        .as_array()?
        .iter()
        .map(|c| c.as_number()?.to_string().parse::<BigInt>().ok())
        .collect::<Option<Vec<_>>>()?;
    Some(QPoly::from_coeffs(coeffs))
}
