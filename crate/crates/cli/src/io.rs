//! JSONL reading and writing with configurable field names.

use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use anyhow::Context;
use serde_json::{Map, Value};

#[derive(Debug, Clone)]
pub struct FieldMap {
    pub id: String,
    pub question: String,
    pub output: String,
    pub prediction: String,
}

impl Default for FieldMap {
    fn default() -> Self {
        FieldMap {
            id: "id".into(),
            question: "question".into(),
            output: "output".into(),
            prediction: "prediction".into(),
        }
    }
}

/// One input line that could not be used.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub line: usize,
    pub id: String,
    pub fields: Map<String, Value>,
}

impl Row {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    /// A field that may hold either a JSON object or raw text.
    pub fn text_or_json(&self, key: &str) -> Option<String> {
        match self.fields.get(key)? {
            Value::String(s) => Some(s.clone()),
            Value::Null => None,
            other => Some(other.to_string()),
        }
    }
}

#[derive(Debug, Default)]
pub struct Dataset {
    pub rows: Vec<Row>,
    pub errors: Vec<LineError>,
}

fn id_of(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.trim().is_empty() => Some(s.trim().to_string()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

pub fn parse_dataset(reader: impl BufRead, fields: &FieldMap) -> anyhow::Result<Dataset> {
    let mut out = Dataset::default();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.with_context(|| format!("reading line {line_no}"))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut err = |message: String| {
            out.errors.push(LineError {
                line: line_no,
                message,
            })
        };
        let fields_obj = match serde_json::from_str::<Value>(&line) {
            Ok(Value::Object(m)) => m,
            Ok(_) => {
                err("not a JSON object".into());
                continue;
            }
            Err(e) => {
                err(format!("invalid JSON: {e}"));
                continue;
            }
        };
        let Some(id) = fields_obj.get(&fields.id).and_then(id_of) else {
            err(format!("missing or empty \"{}\"", fields.id));
            continue;
        };
        if !seen.insert(id.clone()) {
            err(format!("duplicate id {id}"));
            continue;
        }
        out.rows.push(Row {
            line: line_no,
            id,
            fields: fields_obj,
        });
    }
    Ok(out)
}

pub fn load_dataset(path: &Path, fields: &FieldMap) -> anyhow::Result<Dataset> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_dataset(BufReader::new(file), fields)
}

pub fn write_jsonl<'a>(
    path: &Path,
    rows: impl IntoIterator<Item = &'a Value>,
) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    for r in rows {
        serde_json::to_writer(&mut buf, r)?;
        buf.push(b'\n');
    }
    write_file(path, &buf)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let mut f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    f.write_all(bytes)?;
    Ok(())
}
