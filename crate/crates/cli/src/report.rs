//! Run reports. Field order is insertion order in both renderings and every
//! number is an exact integer or fraction string.

use std::fmt::Write as _;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Text(String),
    Bool(bool),
    List(Vec<Field>),
    Map(Vec<(String, Field)>),
}

impl Field {
    pub fn text(s: impl ToString) -> Field {
        Field::Text(s.to_string())
    }

    pub fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> Field {
        Field::List(items.into_iter().map(Field::text).collect())
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
            Field::List(xs) => Value::Array(xs.iter().map(Field::to_json).collect()),
            Field::Map(kv) => Value::Object(
                kv.iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect::<Map<_, _>>(),
            ),
        }
    }

    fn inline(&self) -> Option<String> {
        match self {
            Field::Text(s) => Some(s.clone()),
            Field::Bool(b) => Some(b.to_string()),
            Field::List(xs) => {
                let parts = xs.iter().map(Field::inline).collect::<Option<Vec<_>>>()?;
                Some(format!("[{}]", parts.join(", ")))
            }
            Field::Map(_) => None,
        }
    }
}

/// A map of named fields.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Section(pub Vec<(String, Field)>);

impl Section {
    pub fn new() -> Self {
        Section::default()
    }

    pub fn put(&mut self, key: &str, value: Field) -> &mut Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn text(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.put(key, Field::text(value))
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.put(key, Field::Bool(value))
    }

    pub fn into_field(self) -> Field {
        Field::Map(self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the input files, in argument order.
    pub inputs_digest: String,
    pub outputs: Section,
    /// Wall-clock milliseconds; only present when requested.
    pub timing_ms: Option<u128>,
}

pub fn digest_inputs<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

fn render_text(out: &mut String, indent: usize, kv: &[(String, Field)]) {
    let pad = "  ".repeat(indent);
    for (k, v) in kv {
        match v.inline() {
            Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
            None => {
                writeln!(out, "{pad}{k}:").unwrap();
                match v {
                    Field::Map(inner) => render_text(out, indent + 1, inner),
                    Field::List(xs) => {
                        for (i, x) in xs.iter().enumerate() {
                            let item = [(format!("[{i}]"), x.clone())];
                            render_text(out, indent + 1, &item);
                        }
                    }
                    _ => unreachable!("scalars render inline"),
                }
            }
        }
    }
}

impl RunReport {
    fn header(&self) -> Vec<(String, Field)> {
        let mut kv = vec![
            ("command".to_string(), Field::text(&self.command)),
            (
                "inputs_sha256".to_string(),
                Field::text(&self.inputs_digest),
            ),
        ];
        kv.extend(self.outputs.0.iter().cloned());
        if let Some(ms) = self.timing_ms {
            kv.push(("timing_ms".to_string(), Field::text(ms)));
        }
        kv
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                render_text(&mut out, 0, &self.header());
                out
            }
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&Field::Map(self.header()).to_json())
                    .expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}
