// SPDX-License-Identifier: Apache-2.0

//! JSON reports and CSV tables.
//!
//! Exact quantities are strings (`"p/q"`), floats are rounded to 15
//! significant digits, and object keys are sorted, so a report is
//! byte-for-byte reproducible for fixed inputs.

use hartogs_core::algebra::{format_rational, Rational};
use serde_json::{Map, Value};

/// Significant digits kept in every floating-point output.
pub const FLOAT_DIGITS: usize = 15;

/// `x` rounded to [`FLOAT_DIGITS`] significant digits; non-finite values
/// become the strings `"infinity"`, `"-infinity"` and `"nan"`.
pub fn float(x: f64) -> Value {
    if x.is_nan() {
        return Value::from("nan");
    }
    if x.is_infinite() {
        return Value::from(if x > 0.0 { "infinity" } else { "-infinity" });
    }
    Value::from(round_sig(x))
}

pub fn round_sig(x: f64) -> f64 {
    format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// The CSV cell for a float, spelled as in the JSON reports.
pub fn float_cell(x: f64) -> String {
    match float(x) {
        Value::String(s) => s,
        v => v.to_string(),
    }
}

pub fn exact(q: &Rational) -> Value {
    Value::from(format_rational(q))
}

pub fn exact_list(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(exact).collect())
}

pub fn exact_opt(q: Option<&Rational>) -> Value {
    q.map(exact).unwrap_or_else(|| Value::from("none"))
}

/// A JSON report: the echoed input, the results, a source descriptor for
/// every result and a tolerance for every floating-point result.
pub struct Report {
    command: &'static str,
    input: Map<String, Value>,
    results: Map<String, Value>,
    sources: Map<String, Value>,
    tolerances: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            input: Map::new(),
            results: Map::new(),
            sources: Map::new(),
            tolerances: Map::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.input.insert(key.to_string(), value.into());
        self
    }

    /// An exactly computed result.
    pub fn exact(&mut self, key: &str, value: impl Into<Value>, source: &str) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self.sources.insert(key.to_string(), Value::from(format!("exact: {source}")));
        self
    }

    /// A floating-point result with its declared tolerance.
    pub fn numeric(&mut self, key: &str, value: f64, tolerance: f64, source: &str) -> &mut Self {
        self.results.insert(key.to_string(), float(value));
        self.sources.insert(key.to_string(), Value::from(format!("numeric: {source}")));
        self.tolerances.insert(key.to_string(), float(tolerance));
        self
    }

    /// A floating-point result stored as an arbitrary JSON value, e.g. a list.
    pub fn numeric_value(&mut self, key: &str, value: Value, tolerance: f64, source: &str) -> &mut Self {
        self.results.insert(key.to_string(), value);
        self.sources.insert(key.to_string(), Value::from(format!("numeric: {source}")));
        self.tolerances.insert(key.to_string(), float(tolerance));
        self
    }

    pub fn render(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command));
        root.insert("input".into(), Value::Object(self.input.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        root.insert("sources".into(), Value::Object(self.sources.clone()));
        root.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// CSV text with the given header; written even when there are no rows.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV cells are UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering() {
        assert_eq!(float(3.0).to_string(), "3.0");
        assert_eq!(float(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(float(f64::INFINITY), Value::from("infinity"));
        assert_eq!(float_cell(-0.25), "-0.25");
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333333);
    }

    #[test]
    fn header_only_table() {
        assert_eq!(csv_table(&["a", "b"], &[]), "a,b\n");
        let t = csv_table(&["a"], &[vec!["x,y".into()]]);
        assert_eq!(t, "a\n\"x,y\"\n");
    }

    #[test]
    fn report_keys_are_sorted() {
        let mut r = Report::new("demo");
        r.exact("zeta", "1/2", "test").exact("alpha", "3", "test");
        let s = r.render();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.ends_with("}\n"));
    }
}
