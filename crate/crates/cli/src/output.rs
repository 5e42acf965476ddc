//! Rendering of command results as JSON, CSV or plain text.

use std::io::{self, Write};

use gupnl_core::Complex64;
use serde_json::{Map, Value};

use crate::args::Format;

/// Rounds every emitted float to a fixed number of significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Emitter {
    precision: usize,
}

impl Emitter {
    pub fn new(precision: usize) -> Self {
        Self { precision }
    }

    pub fn round(&self, x: f64) -> f64 {
        if !x.is_finite() || x == 0.0 {
            return x + 0.0;
        }
        let s = format!("{:.*e}", self.precision - 1, x);
        s.parse::<f64>().expect("formatted float parses") + 0.0
    }

    /// Non-finite values become `null`.
    pub fn num(&self, x: f64) -> Value {
        Value::from(self.round(x))
    }

    pub fn complex(&self, z: Complex64) -> Value {
        let mut m = Map::new();
        m.insert("re".into(), self.num(z.re));
        m.insert("im".into(), self.num(z.im));
        Value::Object(m)
    }

    pub fn nums(&self, xs: &[f64]) -> Value {
        Value::Array(xs.iter().map(|&x| self.num(x)).collect())
    }

    pub fn complexes(&self, zs: &[Complex64]) -> Value {
        Value::Array(zs.iter().map(|&z| self.complex(z)).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    /// Cells hold `{"re", "im"}` objects; CSV splits them into two columns.
    pub complex: bool,
}

impl Column {
    pub fn real(name: &str) -> Self {
        Self { name: name.into(), complex: false }
    }

    pub fn complex(name: &str) -> Self {
        Self { name: name.into(), complex: true }
    }
}

pub struct Table<'a> {
    pub columns: Vec<Column>,
    pub rows: Box<dyn Iterator<Item = Vec<Value>> + 'a>,
}

impl Table<'_> {
    fn row_object(columns: &[Column], row: Vec<Value>) -> Value {
        Value::Object(columns.iter().map(|c| c.name.clone()).zip(row).collect())
    }
}

pub enum Report<'a> {
    Document(Value),
    /// `meta` plus a `rows` array in JSON; CSV carries only the rows.
    Table { meta: Map<String, Value>, table: Table<'a> },
    /// JSON-lines records followed by one `{"summary": ...}` line.
    Stream { table: Table<'a>, summary: Value },
}

/// Write `report` to `out`. In CSV mode anything that is not part of the table
/// goes to `side` as one compact JSON line.
pub fn render(report: Report<'_>, format: Format, out: &mut dyn Write, side: &mut dyn Write) -> io::Result<()> {
    match (report, format) {
        (Report::Document(v), Format::Json) => write_pretty(out, &v),
        (Report::Document(v), Format::Csv) => {
            let mut cells = Vec::new();
            flatten("", &v, &mut cells);
            let (header, values): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
            write_csv_line(out, &header)?;
            write_csv_line(out, &values)
        }
        (Report::Document(v), Format::Text) => write_text(out, &v, 0),

        (Report::Table { mut meta, table }, Format::Json) => {
            let columns = table.columns;
            let rows: Vec<Value> = table.rows.map(|r| Table::row_object(&columns, r)).collect();
            meta.insert("rows".into(), Value::Array(rows));
            write_pretty(out, &Value::Object(meta))
        }
        (Report::Table { meta, table }, Format::Csv) => {
            write_csv_table(out, table)?;
            if !meta.is_empty() {
                writeln!(side, "{}", Value::Object(meta))?;
            }
            Ok(())
        }
        (Report::Table { meta, table }, Format::Text) => {
            write_text(out, &Value::Object(meta), 0)?;
            write_text_table(out, table)
        }

        (Report::Stream { table, summary }, Format::Json) => {
            let columns = table.columns;
            for row in table.rows {
                writeln!(out, "{}", Table::row_object(&columns, row))?;
            }
            let mut m = Map::new();
            m.insert("summary".into(), summary);
            writeln!(out, "{}", Value::Object(m))
        }
        (Report::Stream { table, summary }, Format::Csv) => {
            write_csv_table(out, table)?;
            writeln!(side, "{summary}")
        }
        (Report::Stream { table, summary }, Format::Text) => {
            write_text_table(out, table)?;
            writeln!(out, "summary:")?;
            write_text(out, &summary, 1)
        }
    }
}

fn write_pretty(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
    writeln!(out, "{s}")
}

fn is_complex(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.len() == 2 && m.contains_key("re") && m.contains_key("im"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn complex_text(v: &Value) -> String {
    let re = scalar(&v["re"]);
    let im = scalar(&v["im"]);
    match im.strip_prefix('-') {
        Some(mag) => format!("{re}-{mag}i"),
        None => format!("{re}+{im}i"),
    }
}

/// Dotted column names; array positions are 1-based.
fn flatten(prefix: &str, v: &Value, cells: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match v {
        v if is_complex(v) => {
            cells.push((format!("{prefix}_re"), scalar(&v["re"])));
            cells.push((format!("{prefix}_im"), scalar(&v["im"])));
        }
        Value::Object(m) => {
            for (k, child) in m {
                flatten(&join(k), child, cells);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&(i + 1).to_string()), child, cells);
            }
        }
        other => cells.push((prefix.to_string(), scalar(other))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_csv_line(out: &mut dyn Write, fields: &[String]) -> io::Result<()> {
    let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    writeln!(out, "{}", line.join(","))
}

fn write_csv_table(out: &mut dyn Write, table: Table<'_>) -> io::Result<()> {
    let header: Vec<String> = table
        .columns
        .iter()
        .flat_map(|c| {
            if c.complex {
                vec![format!("{}_re", c.name), format!("{}_im", c.name)]
            } else {
                vec![c.name.clone()]
            }
        })
        .collect();
    write_csv_line(out, &header)?;
    for row in table.rows {
        let fields: Vec<String> = table
            .columns
            .iter()
            .zip(&row)
            .flat_map(|(c, v)| {
                if c.complex {
                    vec![scalar(&v["re"]), scalar(&v["im"])]
                } else {
                    vec![scalar(v)]
                }
            })
            .collect();
        write_csv_line(out, &fields)?;
    }
    Ok(())
}

fn text_value(v: &Value) -> String {
    match v {
        v if is_complex(v) => complex_text(v),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(text_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => scalar(other),
    }
}

fn write_text(out: &mut dyn Write, v: &Value, depth: usize) -> io::Result<()> {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if !is_complex(v) => {
            for (k, child) in m {
                match child {
                    Value::Object(_) if !is_complex(child) => {
                        writeln!(out, "{pad}{k}:")?;
                        write_text(out, child, depth + 1)?;
                    }
                    _ => writeln!(out, "{pad}{k}: {}", text_value(child))?,
                }
            }
            Ok(())
        }
        other => writeln!(out, "{pad}{}", text_value(other)),
    }
}

fn write_text_table(out: &mut dyn Write, table: Table<'_>) -> io::Result<()> {
    let header: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
    writeln!(out, "{}", header.join("  "))?;
    for row in table.rows {
        let cells: Vec<String> = row.iter().map(text_value).collect();
        writeln!(out, "{}", cells.join("  "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_keeps_significant_digits() {
        let e = Emitter::new(6);
        assert_eq!(e.round(0.682_327_803_828), 0.682_328);
        assert_eq!(e.round(-1.234_567_89e-12), -1.234_57e-12);
        assert!(e.round(-0.0).is_sign_positive());
        assert_eq!(e.num(f64::NAN), Value::Null);
    }

    #[test]
    fn flatten_splits_complex_pairs() {
        let v = json!({"a": 1.5, "z": {"re": 1.0, "im": -2.0}, "c": [{"re": 0.0, "im": 1.0}]});
        let mut cells = Vec::new();
        flatten("", &v, &mut cells);
        let names: Vec<&str> = cells.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(names, ["a", "z_re", "z_im", "c.1_re", "c.1_im"]);
    }

    #[test]
    fn complex_text_form() {
        assert_eq!(complex_text(&json!({"re": 1.0, "im": -2.0})), "1.0-2.0i");
        assert_eq!(complex_text(&json!({"re": 0.0, "im": 0.5})), "0.0+0.5i");
    }

    #[test]
    fn csv_quotes_when_needed() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
