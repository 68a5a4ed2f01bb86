//! Report rendering and destinations.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliError;

pub const OUTPUT_DIR_ENV: &str = "HYPERGLAUBER_OUTPUT_DIR";

/// Rows of scalar cells with a header.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// One row holding the scalar leaves of `value`, with dotted column names.
    pub fn summary(value: &Value) -> Self {
        let mut cells = Vec::new();
        flatten("", value, &mut cells);
        let (header, row) = cells.into_iter().unzip();
        Self {
            header,
            rows: vec![row],
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

/// What a command produced.
pub enum Report {
    /// A JSON summary plus an optional per-row table for CSV output.
    Data { result: Value, table: Option<Table> },
    /// Raw text written as is (hypergraph files).
    Text(String),
}

impl Report {
    pub fn data<T: Serialize>(result: &T, table: Option<Table>) -> Result<Self, CliError> {
        Ok(Report::Data {
            result: serde_json::to_value(result).map_err(CliError::internal)?,
            table,
        })
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Renders a report. JSON output wraps the result with the command name and
/// the full configuration; CSV output carries the configuration on a leading
/// `#` comment line.
pub fn render(command: &str, config: &Value, report: Report, format: Format) -> String {
    match report {
        Report::Text(text) => text,
        Report::Data { result, table } => match format {
            Format::Json => {
                let mut envelope = Map::new();
                envelope.insert("command".into(), json!(command));
                envelope.insert("config".into(), config.clone());
                envelope.insert("result".into(), result);
                let mut s = serde_json::to_string_pretty(&Value::Object(envelope))
                    .expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let table = table.unwrap_or_else(|| Table::summary(&result));
                let mut s = format!("# command={command} config={config}\n");
                s.push_str(&table.header.join(","));
                s.push('\n');
                for row in &table.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
        },
    }
}

/// Resolves `--output` against the output-directory environment variable.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(CliError::io)?;
            out.flush().map_err(CliError::io)
        }
        Some(p) => {
            let p = resolve_output(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(CliError::io)?;
            }
            fs::write(&p, text).map_err(|e| CliError::io(format!("{}: {e}", p.display())))
        }
    }
}

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(CliError::io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
    }
}
