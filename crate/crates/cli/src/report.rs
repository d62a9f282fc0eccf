//! Report assembly and the three output formats.
//!
//! JSON objects are `serde_json::Map`, which keeps keys sorted, and no value
//! is ever a float, so rendering a parsed report reproduces it byte for byte.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SCHEMA: &str = "dqp-invariants/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Runs `f` and records its wall time under `section`.
    pub fn timed<T>(&mut self, section: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timings.push((section.to_string(), start.elapsed()));
        out
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json_value(&self, timings: bool) -> Value {
        let mut root = Map::new();
        root.insert("schema".into(), SCHEMA.into());
        root.insert("command".into(), self.command.clone().into());
        root.insert("inputs".into(), Value::Object(self.inputs.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        root.insert(
            "checks".into(),
            Value::Array(
                self.checks
                    .iter()
                    .map(|c| {
                        let mut m = Map::new();
                        m.insert("name".into(), c.name.clone().into());
                        m.insert("status".into(), status(c.passed).into());
                        m.insert("detail".into(), c.detail.clone().into());
                        Value::Object(m)
                    })
                    .collect(),
            ),
        );
        root.insert("notes".into(), self.notes.clone().into());
        root.insert("passed".into(), self.all_passed().into());
        if timings {
            let mut m = Map::new();
            for (name, d) in &self.timings {
                m.insert(name.clone(), micros(*d));
            }
            root.insert("elapsed_us".into(), Value::Object(m));
        }
        Value::Object(root)
    }

    pub fn render(&self, format: Format, timings: bool) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(render_json(&self.to_json_value(timings))),
            Format::Table => Ok(self.render_table(timings)),
            Format::Csv => self.render_csv(timings),
        }
    }

    fn render_table(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dqp {}  ({SCHEMA})", self.command);
        let mut block = |title: &str, rows: Vec<(String, String)>| {
            if rows.is_empty() {
                return;
            }
            let width = rows
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            let _ = writeln!(out, "\n{title}");
            for (k, v) in rows {
                let pad = width - k.chars().count();
                let _ = writeln!(out, "  {k}{}  {v}", " ".repeat(pad));
            }
        };
        block("inputs", flatten_map(&self.inputs));
        block("results", flatten_map(&self.results));
        block(
            "checks",
            self.checks
                .iter()
                .map(|c| {
                    (
                        format!("[{}] {}", status(c.passed), c.name),
                        c.detail.clone(),
                    )
                })
                .collect(),
        );
        block(
            "notes",
            self.notes
                .iter()
                .map(|n| ("-".to_string(), n.clone()))
                .collect(),
        );
        if timings {
            block(
                "elapsed (µs)",
                self.timings
                    .iter()
                    .map(|(k, d)| (k.clone(), d.as_micros().to_string()))
                    .collect(),
            );
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "\n{passed}/{} checks passed", self.checks.len());
        out
    }

    fn render_csv(&self, timings: bool) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut rows: Vec<[String; 4]> = vec![[
            "command".into(),
            "command".into(),
            self.command.clone(),
            String::new(),
        ]];
        for (k, v) in flatten_map(&self.inputs) {
            rows.push(["input".into(), k, v, String::new()]);
        }
        for (k, v) in flatten_map(&self.results) {
            rows.push(["result".into(), k, v, String::new()]);
        }
        for c in &self.checks {
            rows.push([
                "check".into(),
                c.name.clone(),
                status(c.passed).into(),
                c.detail.clone(),
            ]);
        }
        for (i, n) in self.notes.iter().enumerate() {
            rows.push(["note".into(), i.to_string(), n.clone(), String::new()]);
        }
        if timings {
            for (k, d) in &self.timings {
                rows.push([
                    "elapsed_us".into(),
                    k.clone(),
                    d.as_micros().to_string(),
                    String::new(),
                ]);
            }
        }
        let csv_err = |e: csv::Error| CliError::Internal(format!("csv encoding: {e}"));
        w.write_record(["section", "key", "value", "detail"])
            .map_err(csv_err)?;
        for row in rows {
            w.write_record(&row).map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Internal(format!("csv encoding: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(format!("csv encoding: {e}")))
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn micros(d: Duration) -> Value {
    Value::from(u64::try_from(d.as_micros()).unwrap_or(u64::MAX))
}

/// Pretty-printed with a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Exact integer: a JSON number when it fits in `i64`, a decimal string otherwise.
pub fn int(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(value.to_string()),
    }
}

pub fn ints<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(values.into_iter().map(int).collect())
}

/// Integral values as [`int`], others as the string `"num/den"`.
pub fn rational(value: &num_rational::BigRational) -> Value {
    if value.is_integer() {
        int(value.numer())
    } else {
        Value::from(format!("{}/{}", value.numer(), value.denom()))
    }
}

pub fn object(entries: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(
        entries
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    )
}

/// Leaves of `map` as `(dotted.path[index], text)` pairs.
pub fn flatten_map(map: &Map<String, Value>) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (k, v) in map {
        flatten(k.clone(), v, &mut out);
    }
    out
}

fn flatten(path: String, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(m) if !m.is_empty() => {
            for (k, v) in m {
                flatten(format!("{path}.{k}"), v, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, v) in a.iter().enumerate() {
                flatten(format!("{path}[{i}]"), v, out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}
