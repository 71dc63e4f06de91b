//! Report documents printed by the command-line tool.
//!
//! A report is an ordered list of named fields. The JSON form is one object
//! holding them in order after the schema header; the text form prints one
//! `name: value` line per field, with compound values written as compact
//! JSON. Both forms therefore carry the same data.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub const SCHEMA: &str = "jdg-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<String>,
    pub fields: Vec<(String, Value)>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: &[&str]) -> Self {
        ReportDocument {
            command: command.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            fields: Vec::new(),
        }
    }

    /// Appends a field. Panics if the value cannot be represented as JSON,
    /// which no report type allows.
    pub fn add(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.push((name.to_string(), v));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{SCHEMA} {SCHEMA_VERSION}\ncommand: {}\n", self.command);
        for input in &self.inputs {
            out.push_str(&format!("input: {input}\n"));
        }
        for (name, value) in &self.fields {
            match value {
                Value::String(s) if s.contains('\n') => {
                    out.push_str(&format!("{name}:\n"));
                    for line in s.lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
                Value::String(s) => out.push_str(&format!("{name}: {s}\n")),
                other => out.push_str(&format!("{name}: {other}\n")),
            }
        }
        out
    }
}

impl Serialize for ReportDocument {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4 + self.fields.len()))?;
        m.serialize_entry("schema", SCHEMA)?;
        m.serialize_entry("schema_version", &SCHEMA_VERSION)?;
        m.serialize_entry("command", &self.command)?;
        m.serialize_entry("inputs", &self.inputs)?;
        for (name, value) in &self.fields {
            m.serialize_entry(name, value)?;
        }
        m.end()
    }
}
