//! Check reports, rendered as text tables, one-line summaries, or JSON.

use serde_json::{json, Map, Value};

/// Outcome of one named check with its observed/expected details.
#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub fields: Vec<(String, Value)>,
    pub pass: bool,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Report {
        Report { check: check.into(), fields: Vec::new(), pass: true }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl Into<Value>) -> Report {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn passing(mut self, pass: bool) -> Report {
        self.pass = self.pass && pass;
        self
    }

    /// Two-column table, one field per line.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("check".into(), self.check.clone())];
        rows.extend(self.fields.iter().map(|(k, v)| (k.clone(), render_value(v))));
        rows.push(("pass".into(), self.pass.to_string()));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// One line: `PASS name k=v ...`.
    pub fn render_line(&self) -> String {
        let mut out = format!("{} {}", if self.pass { "PASS" } else { "FAIL" }, self.check);
        for (k, v) in &self.fields {
            out.push_str(&format!(" {k}={}", render_value(v)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("check".into(), json!(self.check));
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        map.insert("pass".into(), json!(self.pass));
        Value::Object(map)
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
