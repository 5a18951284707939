//! Table rendering for the CLI: fixed-schema CSV and JSON with a metadata
//! block. Energies carry 12 significant digits so regression diffs sit well
//! above solver tolerance, and all formatting is deterministic.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

/// 12-significant-digit scientific representation.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// One table cell.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(usize),
    Real(f64),
    /// Blank in CSV, null in JSON.
    OptReal(Option<f64>),
    Text(&'static str),
}

/// Fixed-schema output table.
#[derive(Clone, Debug)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Int(v) => v.to_string(),
                    Cell::Real(v) => fmt_sig(*v),
                    Cell::OptReal(Some(v)) => fmt_sig(*v),
                    Cell::OptReal(None) => String::new(),
                    Cell::Text(s) => (*s).to_string(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (header, cell) in self.headers.iter().zip(row) {
                    let value = match cell {
                        Cell::Int(v) => json!(v),
                        Cell::Real(v) => json!(v),
                        Cell::OptReal(Some(v)) => json!(v),
                        Cell::OptReal(None) => Value::Null,
                        Cell::Text(s) => json!(s),
                    };
                    obj.insert((*header).to_string(), value);
                }
                Value::Object(obj)
            })
            .collect()
    }
}

/// Provenance block attached to JSON outputs.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub command: &'static str,
    pub model: Option<String>,
    pub parameters: BTreeMap<String, f64>,
    /// Inclusive level range.
    pub levels: Option<(usize, usize)>,
    pub grid: Option<GridMetadata>,
    pub solver_tol: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridMetadata {
    pub n_points: usize,
    pub x_max: f64,
}

/// Output encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Render the table in the requested encoding. JSON wraps the same rows
/// with the metadata block; CSV is the bare table.
pub fn render(table: &Table, metadata: &Metadata, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => table.csv(),
        OutputFormat::Json => {
            let doc = json!({
                "metadata": serde_json::to_value(metadata).expect("metadata serializes"),
                "rows": table.json_rows(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_sig(-0.3459052597155467), "-3.45905259716e-1");
        assert_eq!(fmt_sig(1.0), "1.00000000000e0");
        assert_eq!(fmt_sig(-12.005), "-1.20050000000e1");
    }

    #[test]
    fn csv_layout_and_blanks() {
        let mut t = Table::new(vec!["n", "e", "maybe", "tag"]);
        t.push(vec![
            Cell::Int(0),
            Cell::Real(-0.5),
            Cell::OptReal(None),
            Cell::Text("upper"),
        ]);
        t.push(vec![
            Cell::Int(1),
            Cell::Real(0.25),
            Cell::OptReal(Some(-0.125)),
            Cell::Text("upper"),
        ]);
        let csv = t.csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,e,maybe,tag");
        assert_eq!(lines[1], "0,-5.00000000000e-1,,upper");
        assert_eq!(lines[2], "1,2.50000000000e-1,-1.25000000000e-1,upper");
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn json_wraps_rows_with_metadata() {
        let mut t = Table::new(vec!["n", "e"]);
        t.push(vec![Cell::Int(0), Cell::OptReal(None)]);
        let meta = Metadata {
            command: "spectrum",
            model: Some("soft-coulomb".into()),
            parameters: BTreeMap::from([("D".to_string(), 2.0)]),
            levels: Some((0, 9)),
            grid: Some(GridMetadata {
                n_points: 1025,
                x_max: 160.0,
            }),
            solver_tol: 1e-12,
        };
        let text = render(&t, &meta, OutputFormat::Json);
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["metadata"]["model"], "soft-coulomb");
        assert_eq!(doc["metadata"]["parameters"]["D"], 2.0);
        assert_eq!(doc["rows"][0]["n"], 0);
        assert!(doc["rows"][0]["e"].is_null());
    }
}
