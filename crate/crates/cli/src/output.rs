use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// An input file together with the SHA-256 of its bytes.
pub struct Input {
    pub path: PathBuf,
    pub text: String,
    pub sha256: String,
}

pub fn read_input(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let sha256 = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| CliError::Input {
        path: path.to_path_buf(),
        source: daglca_core::Error::Parse("input is not UTF-8".into()),
    })?;
    Ok(Input {
        path: path.to_path_buf(),
        text,
        sha256,
    })
}

impl Input {
    /// Parses the text, attributing failures to this file.
    pub fn parse<T>(&self, f: impl FnOnce(&str) -> daglca_core::Result<T>) -> Result<T> {
        f(&self.text).map_err(|source| CliError::Input {
            path: self.path.clone(),
            source,
        })
    }
}

/// Replay information attached to every report.
pub struct Provenance {
    pub fields: Vec<(&'static str, Value)>,
}

impl Provenance {
    pub fn new(algorithm: &str, seed: u64, inputs: &[&Input]) -> Self {
        let hashes: Vec<Value> = inputs.iter().map(|i| json!(i.sha256)).collect();
        Provenance {
            fields: vec![
                ("tool", json!(concat!("daglca ", env!("CARGO_PKG_VERSION")))),
                ("algorithm", json!(algorithm)),
                ("seed", json!(seed)),
                ("input_sha256", Value::Array(hashes)),
            ],
        }
    }

    pub fn with(mut self, key: &'static str, value: Value) -> Self {
        self.fields.push((key, value));
        self
    }

    fn object(&self) -> Value {
        Value::Object(self.fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
    }

    /// `report` with a leading `provenance` member.
    pub fn wrap_json(&self, report: Value) -> Value {
        let mut out = Map::new();
        out.insert("provenance".into(), self.object());
        match report {
            Value::Object(m) => out.extend(m),
            other => {
                out.insert("result".into(), other);
            }
        }
        Value::Object(out)
    }

    /// `# key=value ...` comment line.
    pub fn csv_header(&self) -> String {
        let parts: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                Value::Array(a) => {
                    let items: Vec<String> = a
                        .iter()
                        .map(|x| x.as_str().map_or(x.to_string(), str::to_string))
                        .collect();
                    format!("{k}={}", items.join(","))
                }
                other => format!("{k}={other}"),
            })
            .collect();
        format!("# {}\n", parts.join(" "))
    }
}

pub fn json_text(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
