//! Human-readable rendering of JSON reports.
//!
//! Scalars print as `key: value`; matrices (arrays of equal-length scalar
//! arrays) print as aligned grids; arrays of objects print as tables whose
//! columns are the scalar fields of the first object.

use std::fmt::Write;

use serde_json::{Map, Value};

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(map) => render_object(&mut out, map, 0),
        other => out.push_str(&scalar_text(other)),
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

fn indent(level: usize) -> String {
    "  ".repeat(level)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    let first = rows.first()?.as_array()?;
    let width = first.len();
    rows.iter()
        .map(|r| {
            let r = r.as_array()?;
            (r.len() == width && r.iter().all(is_scalar))
                .then(|| r.iter().map(scalar_text).collect())
        })
        .collect()
}

fn render_object(out: &mut String, map: &Map<String, Value>, level: usize) {
    let pad = indent(level);
    for (key, value) in map {
        match value {
            v if is_scalar(v) => {
                let _ = writeln!(out, "{pad}{key}: {}", scalar_text(v));
            }
            Value::Object(inner) => {
                let _ = writeln!(out, "{pad}{key}:");
                render_object(out, inner, level + 1);
            }
            Value::Array(items) => {
                if let Some(grid) = as_matrix(value) {
                    let _ = writeln!(out, "{pad}{key}:");
                    render_grid(out, &grid, level + 1);
                } else if items.iter().all(is_scalar) {
                    let parts: Vec<_> = items.iter().map(scalar_text).collect();
                    let _ = writeln!(out, "{pad}{key}: [{}]", parts.join(", "));
                } else if items.iter().all(Value::is_object) {
                    let _ = writeln!(out, "{pad}{key}:");
                    render_records(out, items, level + 1);
                } else {
                    let _ = writeln!(out, "{pad}{key}: {value}");
                }
            }
            _ => unreachable!("scalars handled above"),
        }
    }
}

fn render_grid(out: &mut String, grid: &[Vec<String>], level: usize) {
    let cols = grid.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let pad = indent(level);
    for row in grid {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{pad}{}", cells.join("  "));
    }
}

fn render_records(out: &mut String, items: &[Value], level: usize) {
    let Some(Value::Object(first)) = items.first() else {
        return;
    };
    let columns: Vec<&String> = first
        .iter()
        .filter(|(_, v)| is_scalar(v))
        .map(|(k, _)| k)
        .collect();
    if columns.is_empty() {
        let pad = indent(level);
        for item in items {
            let _ = writeln!(out, "{pad}{item}");
        }
        return;
    }
    let mut grid = vec![columns.iter().map(|c| c.to_string()).collect::<Vec<_>>()];
    for item in items {
        grid.push(
            columns
                .iter()
                .map(|c| item.get(c.as_str()).map_or_else(|| "-".into(), scalar_text))
                .collect(),
        );
    }
    render_grid(out, &grid, level);
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_are_aligned() {
        let text = render(&json!({"inverse": [["3", "-5/2"], ["-3", "4"]]}));
        assert_eq!(text, "inverse:\n   3  -5/2\n  -3     4\n");
    }

    #[test]
    fn records_become_tables() {
        let text = render(&json!({"rows": [{"n": 4, "ops": 24}, {"n": 8, "ops": 112}]}));
        assert_eq!(text, "rows:\n  n  ops\n  4   24\n  8  112\n");
    }

    #[test]
    fn records_without_scalars_fall_back_to_json() {
        let text = render(&json!({"cases": [{"nodes": [1, 2]}]}));
        assert_eq!(text, "cases:\n  {\"nodes\":[1,2]}\n");
    }

    #[test]
    fn nested_objects_indent() {
        let text = render(&json!({"timing": {"elapsed_us": 5}, "passed": true}));
        assert!(text.contains("timing:\n  elapsed_us: 5\n"));
        assert!(text.contains("passed: true\n"));
    }
}
