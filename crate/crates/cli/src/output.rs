//! Rendering of flat records and tables as JSON, CSV or Markdown.

use serde_json::{Map, Value};

use crate::args::Format;

pub const SCHEMA: &str = "v1";

/// `x` rounded to 6 significant digits.
pub fn sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(sig6(x)).map_or(Value::Null, Value::Number)
}

/// An ordered set of named fields.
#[derive(Debug, Default, Clone)]
pub struct Record(Map<String, Value>);

impl Record {
    pub fn new(command: &str) -> Self {
        let mut r = Record::default();
        r.put("schema", SCHEMA);
        r.put("command", command);
        r
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_owned(), value.into());
        self
    }

    pub fn num(&mut self, key: &str, x: f64) -> &mut Self {
        self.0.insert(key.to_owned(), number(x));
        self
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(&Value::Object(self.0.clone())),
            Format::Csv => {
                let header: Vec<&str> = self.0.keys().map(String::as_str).collect();
                let row: Vec<String> = self.0.values().map(plain).collect();
                csv_lines(&header, &[row])
            }
            Format::Md => {
                let mut out = String::from("| field | value |\n|---|---|\n");
                for (k, v) in &self.0 {
                    out.push_str(&format!("| {k} | {} |\n", plain(v)));
                }
                out
            }
        }
    }
}

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Cell text: strings unquoted, `null` empty, arrays space-separated.
pub fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn csv_lines(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}
