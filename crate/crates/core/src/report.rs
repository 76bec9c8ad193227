//! Experiment reports: JSON records that diff cleanly across runs.
//!
//! Every CLI command emits one [`ExperimentReport`].  Two rendering rules
//! keep the artifacts regression-friendly: object keys appear in insertion
//! order (never sorted, never hashed), and every float is printed in
//! scientific notation with 17 significant digits, enough to reconstruct
//! the exact bit pattern.

use std::io;

use serde_json::ser::{Formatter, PrettyFormatter, Serializer};
pub use serde_json::{json, Value};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

/// Record of one experiment run.
///
/// `pass` is three-valued: `Some(true)` / `Some(false)` for checked
/// experiments, `None` (rendered as JSON `null`) for runs that only report
/// numbers without a verdict.  The rendered object always carries the keys
/// `experiment`, `config`, `results`, `pass`, `timestamp`, `tool_version`,
/// in that order.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: Value,
    pub results: Value,
    pub pass: Option<bool>,
    pub timestamp: String,
    pub tool_version: String,
}

impl ExperimentReport {
    pub fn new(
        experiment: impl Into<String>,
        config: Value,
        results: Value,
        pass: Option<bool>,
    ) -> ExperimentReport {
        ExperimentReport {
            experiment: experiment.into(),
            config,
            results,
            pass,
            timestamp: timestamp_utc(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Render to pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let value = json!({
            "experiment": self.experiment,
            "config": self.config,
            "results": self.results,
            "pass": self.pass,
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
        });
        let mut text = to_pretty_json(&value);
        text.push('\n');
        text
    }
}

/// Current time as RFC 3339 UTC, e.g. `2026-08-16T12:34:56.789Z`.
pub fn timestamp_utc() -> String {
    OffsetDateTime::now_utc()
        .format(&Rfc3339)
        .expect("UTC timestamps are always representable")
}

/// A float as a JSON value: non-finite values become `null` (JSON has no
/// spelling for them, and a silent large sentinel would be worse).
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Serialize with insertion-order keys, two-space indentation, and floats
/// at 17 significant digits.
pub fn to_pretty_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, ReportFormatter::new());
    serde::Serialize::serialize(value, &mut ser).expect("in-memory JSON rendering cannot fail");
    String::from_utf8(out).expect("serde_json output is UTF-8")
}

/// The pretty formatter with one change: `write_f64` uses `{:.16e}`
/// instead of the shortest round-trip form, so every report prints floats
/// at the same fixed precision as the CSV formats.
struct ReportFormatter<'a> {
    pretty: PrettyFormatter<'a>,
}

impl ReportFormatter<'_> {
    fn new() -> Self {
        ReportFormatter {
            pretty: PrettyFormatter::with_indent(b"  "),
        }
    }
}

impl Formatter for ReportFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.8e}")
    }

    // Everything below just forwards to the pretty formatter; these are the
    // methods it overrides to produce indentation.
    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(writer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_renders_with_fixed_keys_and_precision() {
        let mut report = ExperimentReport::new(
            "demo",
            json!({ "N": 1024, "seed": 7u64, "alpha": 0.5 }),
            json!({ "estimate": float(0.25), "samples": [float(1.0), float(-3.5)] }),
            Some(true),
        );
        report.timestamp = "2026-08-16T00:00:00Z".to_string();
        report.tool_version = "0.0.0".to_string();
        let text = report.render();
        assert_eq!(
            text,
            r#"{
  "experiment": "demo",
  "config": {
    "N": 1024,
    "seed": 7,
    "alpha": 5.0000000000000000e-1
  },
  "results": {
    "estimate": 2.5000000000000000e-1,
    "samples": [
      1.0000000000000000e0,
      -3.5000000000000000e0
    ]
  },
  "pass": true,
  "timestamp": "2026-08-16T00:00:00Z",
  "tool_version": "0.0.0"
}
"#
        );
    }

    #[test]
    fn key_order_is_insertion_order_not_alphabetical() {
        let text = to_pretty_json(&json!({ "zebra": 1, "apple": 2, "mango": 3 }));
        let z = text.find("zebra").unwrap();
        let a = text.find("apple").unwrap();
        let m = text.find("mango").unwrap();
        assert!(z < a && a < m, "got:\n{text}");
    }

    #[test]
    fn floats_edge_cases() {
        assert_eq!(float(f64::NAN), Value::Null);
        assert_eq!(float(f64::INFINITY), Value::Null);
        assert_eq!(to_pretty_json(&float(1.0 / 3.0)), "3.3333333333333331e-1");
        // full u64 seeds survive
        assert_eq!(to_pretty_json(&json!(u64::MAX)), "18446744073709551615");
    }

    #[test]
    fn null_pass_renders_as_json_null() {
        let mut report = ExperimentReport::new("demo", json!({}), json!({}), None);
        report.timestamp = "t".into();
        assert!(report.render().contains("\"pass\": null"));
    }

    #[test]
    fn timestamps_are_rfc3339_utc() {
        let t = timestamp_utc();
        assert!(t.ends_with('Z'), "got {t}");
        assert!(t.contains('T'));
        assert!(t.starts_with("20"));
    }
}
