//! Ordered records rendered as CSV or JSON with 9 significant digits.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

/// Round to 9 significant digits, ties to even on the decimal expansion.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Shortest text that reads back as `sig9(x)`.
pub fn num(x: f64) -> String {
    let r = sig9(x);
    if r.is_nan() {
        "NaN".into()
    } else if r.is_infinite() {
        if r > 0.0 { "inf".into() } else { "-inf".into() }
    } else if r == 0.0 {
        "0".into()
    } else if (1e-5..1e9).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Missing,
    Record(Record),
    List(Vec<Record>),
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Missing, Field::Num)
    }
}

impl From<Record> for Field {
    fn from(v: Record) -> Self {
        Field::Record(v)
    }
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Num(x) => num(*x),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
            Field::Record(_) | Field::List(_) => String::new(),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) => {
                let r = sig9(*x);
                if r.is_finite() {
                    s.serialize_f64(r)
                } else {
                    s.serialize_none()
                }
            }
            Field::Int(n) => s.serialize_u64(*n),
            Field::Bool(b) => s.serialize_bool(*b),
            Field::Text(t) => s.serialize_str(t),
            Field::Missing => s.serialize_none(),
            Field::Record(r) => r.serialize(s),
            Field::List(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for r in v {
                    seq.serialize_element(r)?;
                }
                seq.end()
            }
        }
    }
}

/// Named fields in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Field>) {
        self.0.push((key.into(), value.into()));
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }

    pub fn fields(&self) -> impl Iterator<Item = (&str, &Field)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header from the first row's keys, then one line per row.
pub fn csv(rows: &[Record]) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    out.push_str(&first.keys().map(csv_cell).collect::<Vec<_>>().join(","));
    out.push('\n');
    for r in rows {
        let line: Vec<String> = r.fields().map(|(_, v)| csv_cell(&v.text())).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Header only, for an empty table.
pub fn csv_header(keys: &[&str]) -> String {
    let mut out = keys.join(",");
    out.push('\n');
    out
}

pub fn json(value: &Record) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialise");
    s.push('\n');
    s
}

/// `# key = value` lines.
pub fn comment_block(r: &Record) -> String {
    let mut out = String::new();
    for (k, v) in r.fields() {
        let _ = writeln!(out, "# {k} = {}", v.text());
    }
    out
}
