//! Deterministic JSON reports: keys sorted, floats written with 17
//! significant digits (`{:.16e}`), non-finite floats as `null`.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Complex(Complex<f64>),
    Text(String),
    List(Vec<Field>),
    Map(BTreeMap<String, Field>),
}

/// The fixed float format shared by JSON and CSV output.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Null => s.serialize_none(),
            Field::Bool(b) => s.serialize_bool(*b),
            Field::Int(i) => s.serialize_i64(*i),
            Field::Num(x) if x.is_finite() => {
                let raw =
                    RawValue::from_string(fmt_float(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Field::Num(_) => s.serialize_none(),
            Field::Complex(z) => {
                let m: BTreeMap<&str, Field> =
                    [("im", Field::Num(z.im)), ("re", Field::Num(z.re))].into();
                m.serialize(s)
            }
            Field::Text(t) => s.serialize_str(t),
            Field::List(v) => v.serialize(s),
            Field::Map(m) => m.serialize(s),
        }
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<usize> for Field {
    fn from(n: usize) -> Self {
        Field::Int(n as i64)
    }
}

impl From<u64> for Field {
    fn from(n: u64) -> Self {
        Field::Int(n as i64)
    }
}

impl From<Complex<f64>> for Field {
    fn from(z: Complex<f64>) -> Self {
        Field::Complex(z)
    }
}

impl From<&str> for Field {
    fn from(t: &str) -> Self {
        Field::Text(t.to_string())
    }
}

impl From<String> for Field {
    fn from(t: String) -> Self {
        Field::Text(t)
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Null, Into::into)
    }
}

impl<T: Into<Field>> From<Vec<T>> for Field {
    fn from(v: Vec<T>) -> Self {
        Field::List(v.into_iter().map(Into::into).collect())
    }
}

impl From<Section> for Field {
    fn from(s: Section) -> Self {
        Field::Map(s.0)
    }
}

/// An ordered group of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Section(pub BTreeMap<String, Field>);

impl Section {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Field>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.get(key)
    }
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    /// Arguments as given on the command line.
    pub args: Section,
    /// Parameters after resolution (parsed angles, chosen branches, ...).
    pub params: Section,
    pub results: Section,
    /// What each result stands for.
    pub notes: Section,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            args: Section::new(),
            params: Section::new(),
            results: Section::new(),
            notes: Section::new(),
        }
    }

    fn tree(&self) -> Field {
        Section::new()
            .with("args", self.args.clone())
            .with("command", self.command.as_str())
            .with("notes", self.notes.clone())
            .with("params", self.params.clone())
            .with("results", self.results.clone())
            .with("version", env!("CARGO_PKG_VERSION"))
            .into()
    }

    /// Pretty-printed JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.tree()).expect("report serializes");
        s.push('\n');
        s
    }
}
