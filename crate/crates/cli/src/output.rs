//! Rendering of command results as JSON, aligned tables, or CSV.

use pot_core::numeric::{parse_rational, to_f64};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// A report plus an optional fixed-column view used for CSV.
pub struct Report {
    pub body: Value,
    pub csv: Option<Csv>,
}

pub struct Csv {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(body: Value) -> Self {
        Self { body, csv: None }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.body).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Table => table(&self.body),
            Format::Csv => match &self.csv {
                Some(csv) => render_csv(&csv.header, &csv.rows),
                None => {
                    let mut rows = Vec::new();
                    flatten("", &self.body, &mut rows);
                    let rows: Vec<Vec<String>> = rows.into_iter().map(|(k, v)| vec![k, v]).collect();
                    render_csv(&["key", "value"], &rows)
                }
            },
        }
    }
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Leaf values keyed by dotted path, used for key/value CSV.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out))
        }
        other => out.push((prefix.to_string(), compact(other))),
    }
}

/// `p/q (≈ decimal)` for non-integer rational strings.
fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => match parse_rational(s) {
            Ok(r) if !r.is_integer() => format!("{s} (≈ {:.6})", to_f64(&r)),
            _ => s.clone(),
        },
        other => compact(other),
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_array) => {
            let rows: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", rows.join("; "))
        }
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(compact).collect();
            format!("({})", cells.join(", "))
        }
        Value::Object(map) => {
            let cells: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
            format!("{{{}}}", cells.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn table(value: &Value) -> String {
    let mut pairs = Vec::new();
    let mut grids = Vec::new();
    collect("", value, &mut pairs, &mut grids);
    let width = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &pairs {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    for (name, rows) in grids {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&format!("{name}:\n"));
        out.push_str(&grid(rows));
    }
    out
}

fn collect(
    prefix: &str,
    value: &Value,
    pairs: &mut Vec<(String, String)>,
    grids: &mut Vec<(String, Vec<Map<String, Value>>)>,
) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                collect(&key, v, pairs, grids);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let rows = items.iter().filter_map(|v| v.as_object().cloned()).collect();
            grids.push((prefix.to_string(), rows));
        }
        other => pairs.push((prefix.to_string(), scalar(other))),
    }
}

fn grid(rows: Vec<Map<String, Value>>) -> String {
    let mut columns: Vec<String> = Vec::new();
    for row in &rows {
        for k in row.keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(c).map_or("-".into(), scalar)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap())
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns.iter().map(String::as_str).collect());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rationals_get_decimal_hints() {
        assert_eq!(scalar(&json!("3/4")), "3/4 (≈ 0.750000)");
        assert_eq!(scalar(&json!("1")), "1");
        assert_eq!(scalar(&json!("w1")), "w1");
        assert_eq!(scalar(&Value::Null), "-");
    }

    #[test]
    fn arrays_of_objects_become_grids() {
        let t = table(&json!({"value": "1/2", "rows": [{"a": "1", "b": "2"}, {"a": "10", "b": "x"}]}));
        assert_eq!(t, "value  1/2 (≈ 0.500000)\n\nrows:\n  a   b\n  1   2\n  10  x\n");
    }

    #[test]
    fn csv_quotes_cells_with_commas() {
        let r = Report::new(json!({"v": ["1", "2"]}));
        assert_eq!(r.render(Format::Csv), "key,value\nv,\"(1, 2)\"\n");
    }
}
