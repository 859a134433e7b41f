//! Tabular results with a config echo, written as CSV or JSON.

use crate::error::CliResult;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "DRUMZETA_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(u64),
    S(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::I(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::F(v) => fmt_f64(*v),
            Cell::I(v) => v.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // shortest round-trip form; non-finite values become null
            Cell::F(v) => serde_json::Number::from_f64(*v).map(Value::Number).unwrap_or(Value::Null),
            Cell::I(v) => json!(v),
            Cell::S(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A finished run: what was asked and what came out.
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub table: Table,
}

impl Report {
    /// Hex prefix of the SHA-256 of the canonical (key-sorted) config JSON.
    pub fn config_hash(&self) -> String {
        let canon = json!({ "command": self.command, "config": self.config }).to_string();
        hex::encode(&Sha256::digest(canon.as_bytes())[..8])
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> CliResult<()> {
        let version = env!("CARGO_PKG_VERSION");
        match format {
            Format::Csv => {
                writeln!(w, "# drumzeta {version}")?;
                writeln!(w, "# command: {}", self.command)?;
                writeln!(w, "# config: {}", Value::Object(self.config.clone()))?;
                writeln!(w, "# config_hash: {}", self.config_hash())?;
                let mut out = csv::Writer::from_writer(w);
                out.write_record(&self.table.columns)?;
                for row in &self.table.rows {
                    out.write_record(row.iter().map(Cell::text))?;
                }
                out.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .table
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.table.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect(),
                        )
                    })
                    .collect();
                let doc = json!({
                    "tool": "drumzeta",
                    "version": version,
                    "command": self.command,
                    "config": self.config,
                    "config_hash": self.config_hash(),
                    "columns": self.table.columns,
                    "rows": rows,
                });
                serde_json::to_writer_pretty(&mut w, &doc)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// Relative paths land in `$DRUMZETA_OUT_DIR` when it is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new(&["p", "value", "abs_error"]);
        t.push(vec![2u64.into(), 0.1f64.into(), 1e-17f64.into()]);
        let mut config = Map::new();
        config.insert("bc".into(), json!("DD"));
        Report { command: "zeta".into(), config, table: t }
    }

    #[test]
    fn csv_round_trips_values() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("# drumzeta"));
        let last = s.lines().last().unwrap();
        let v: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 0.1);
        assert!(last.contains(",1.0000000000000001e-1,"));
    }

    #[test]
    fn json_mirrors_csv() {
        let mut buf = Vec::new();
        let r = sample();
        r.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"][0]["value"].as_f64(), Some(0.1));
        assert_eq!(v["config_hash"], json!(r.config_hash()));
        assert_eq!(r.config_hash().len(), 16);
    }
}
