//! Structured command output: one record type emitted as CSV (metadata in
//! `#` comment lines, then a header row) or as JSON. Both emissions are
//! deterministic: inputs and checks are sorted maps and floats print in
//! shortest round-trip form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

/// Tabular payload of one CLI command with echoed inputs and an optional
/// verification summary.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<BTreeMap<String, Value>>,
}

fn f64_value(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(format!("{v}")))
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checks: None,
        }
    }

    pub fn input_f64(&mut self, key: &str, v: f64) -> &mut Self {
        self.inputs.insert(key.to_string(), f64_value(v));
        self
    }

    pub fn input_usize(&mut self, key: &str, v: usize) -> &mut Self {
        self.inputs.insert(key.to_string(), Value::from(v as u64));
        self
    }

    pub fn input_str(&mut self, key: &str, v: &str) -> &mut Self {
        self.inputs.insert(key.to_string(), Value::from(v));
        self
    }

    pub fn check_f64(&mut self, key: &str, v: f64) -> &mut Self {
        self.checks
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), f64_value(v));
        self
    }

    pub fn check_str(&mut self, key: &str, v: &str) -> &mut Self {
        self.checks
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), Value::from(v));
        self
    }

    pub fn check_bool(&mut self, key: &str, v: bool) -> &mut Self {
        self.checks
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), Value::Bool(v));
        self
    }

    /// Appends a row; the column count is fixed per command.
    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the column header"
        );
        self.rows.push(row);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::domain(format!("invalid record JSON: {e}")))
    }

    /// CSV with `#`-prefixed metadata lines, a header row, then data rows.
    /// Floats use '.' decimals in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema_version={}\n", self.schema_version));
        out.push_str(&format!("# command={}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("# input {k}={}\n", csv_scalar(v)));
        }
        if let Some(checks) = &self.checks {
            for (k, v) in checks {
                out.push_str(&format!("# check {k}={}\n", csv_scalar(v)));
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_scalar).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn value_f64(v: f64) -> Value {
    f64_value(v)
}

pub fn value_str(s: &str) -> Value {
    Value::from(s)
}

pub fn value_bool(b: bool) -> Value {
    Value::Bool(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut rec = OutputRecord::new("curve", &["xi", "lambda"]);
        rec.input_f64("a", 1.0).input_f64("p", 0.5);
        rec.check_str("monotonicity", "increasing");
        rec.push_row(vec![value_f64(0.1), value_f64(1.5707963267948966)]);
        rec.push_row(vec![value_f64(1.0), value_f64(26.819673858772949)]);
        rec
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let rec = sample();
        let text = rec.to_json();
        let back = OutputRecord::parse_json(&text).unwrap();
        assert_eq!(text, back.to_json());
        assert_eq!(rec, back);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# schema_version=1");
        assert_eq!(lines[1], "# command=curve");
        assert_eq!(lines[2], "# input a=1");
        assert_eq!(lines[3], "# input p=0.5");
        assert_eq!(lines[4], "# check monotonicity=increasing");
        assert_eq!(lines[5], "xi,lambda");
        assert_eq!(lines[6], "0.1,1.5707963267948966");
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn rejects_ragged_rows() {
        let mut rec = OutputRecord::new("x", &["a", "b"]);
        rec.push_row(vec![value_f64(1.0)]);
    }
}
