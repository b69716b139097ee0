//! Rendering of command results as JSON, CSV or Markdown.

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

/// Flat view of a result for CSV and Markdown output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// A command result: the full JSON document and its tabular projection.
pub struct Output {
    pub json: Value,
    pub table: Table,
}

pub fn render(out: &Output, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_table(&out.table),
        Format::Markdown => Ok(markdown_table(&out.table)),
    }
}

fn csv_table(t: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(&t.headers).map_err(io)?;
    for row in &t.rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn markdown_table(t: &Table) -> String {
    let cell = |s: &str| s.replace('|', "\\|");
    let mut out = String::new();
    out.push_str(&format!("| {} |\n", t.headers.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(t.headers.len())));
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(|c| cell(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut table = Table::new(&["nu", "in_b_hn"]);
        table.push(vec!["1/2,1/2".into(), "true".into()]);
        Output {
            json: serde_json::json!({"b": 1, "a": [2]}),
            table,
        }
    }

    #[test]
    fn csv_quotes_lists() {
        assert_eq!(
            render(&sample(), Format::Csv).unwrap(),
            "nu,in_b_hn\n\"1/2,1/2\",true\n"
        );
    }

    #[test]
    fn markdown_layout() {
        assert_eq!(
            render(&sample(), Format::Markdown).unwrap(),
            "| nu | in_b_hn |\n|---|---|\n| 1/2,1/2 | true |\n"
        );
    }

    #[test]
    fn json_keeps_insertion_order() {
        assert!(
            render(&sample(), Format::Json).unwrap().find("\"b\"")
                < render(&sample(), Format::Json).unwrap().find("\"a\"")
        );
    }
}
