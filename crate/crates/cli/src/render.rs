//! Table, CSV and JSON rendering of row data.
//!
//! CSV: header row, comma separated, LF line endings, no quoting (every
//! field is numeric or a fixed token). JSON: one object with `meta`,
//! `rows` and an optional `summary`; integers only.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text columns.
    Table,
    Csv,
    Json,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: &'a Value,
    rows: &'a [T],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<&'a Value>,
}

pub fn rows<T: Serialize>(
    format: Format,
    meta: &Value,
    rows: &[T],
    summary: Option<&Value>,
) -> std::io::Result<String> {
    match format {
        Format::Csv => csv(rows),
        Format::Table => table(&csv(rows)?),
        Format::Json => json_document(meta, rows, summary),
    }
}

pub fn json_document<T: Serialize>(
    meta: &Value,
    rows: &[T],
    summary: Option<&Value>,
) -> std::io::Result<String> {
    let doc = Document {
        meta,
        rows,
        summary,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<T: Serialize>(rows: &[T]) -> std::io::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Never)
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

/// Right-aligns the columns of a headered CSV text.
fn table(csv_text: &str) -> std::io::Result<String> {
    let cells: Vec<Vec<&str>> = csv_text.lines().map(|l| l.split(',').collect()).collect();
    let columns = cells.first().map_or(0, Vec::len);
    let mut widths = vec![0; columns];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::with_capacity(csv_text.len() * 2);
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        n: u64,
        value: i64,
    }

    #[test]
    fn csv_has_header_and_lf() {
        let s = csv(&[Row { n: 1, value: -1 }, Row { n: 2, value: 10 }]).unwrap();
        assert_eq!(s, "n,value\n1,-1\n2,10\n");
    }

    #[test]
    fn table_aligns() {
        let s = rows(
            Format::Table,
            &Value::Null,
            &[Row { n: 1, value: -1 }, Row { n: 10, value: 5 }],
            None,
        )
        .unwrap();
        assert_eq!(s, " n  value\n 1     -1\n10      5\n");
    }

    #[test]
    fn json_keeps_field_order() {
        let meta = serde_json::json!({"command": "x"});
        let s = json_document(&meta, &[Row { n: 3, value: 0 }], None).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"][0]["n"], 3);
        assert!(s.find("\"n\"").unwrap() < s.find("\"value\"").unwrap());
        assert!(v.get("summary").is_none());
    }
}
