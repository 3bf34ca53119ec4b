//! Report rendering: deterministic JSON on stdout, or a plain table.

use idealext::Point;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;

pub struct Report {
    command: &'static str,
    monoid: Value,
    result: Value,
}

impl Report {
    pub fn new(command: &'static str, monoid: Value, result: Value) -> Self {
        Report {
            command,
            monoid,
            result,
        }
    }

    pub fn emit(&self, as_table: bool) {
        let mut out = String::new();
        if as_table {
            self.render_table(&mut out);
        } else {
            let payload = json!({
                "command": self.command,
                "monoid": self.monoid,
                "result": self.result,
            });
            pretty(&payload, 0, &mut out);
            out.push('\n');
        }
        write_stdout(&out);
    }

    fn render_table(&self, out: &mut String) {
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "monoid:  {}", compact(&self.monoid));
        match self.result.as_object() {
            Some(map) => {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                for (key, value) in map {
                    render_entry(out, key, value, width);
                }
            }
            None => {
                let _ = writeln!(out, "result: {}", compact(&self.result));
            }
        }
    }
}

/// Write the whole report at once; a closed pipe (e.g. `| head`) is a normal
/// way to stop reading, not an error.
fn write_stdout(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let result = stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: failed writing to stdout: {e}");
        std::process::exit(1);
    }
}

fn render_entry(out: &mut String, key: &str, value: &Value, width: usize) {
    match value {
        Value::Array(items) if items.len() > 4 => {
            let _ = writeln!(out, "{key:width$}: ({} entries)", items.len());
            for item in items {
                let _ = writeln!(out, "{:width$}  {}", "", compact(item));
            }
        }
        other => {
            let _ = writeln!(out, "{key:width$}: {}", compact(other));
        }
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).expect("values serialize")
}

/// Pretty-print with scalar-only arrays kept on one line, so coordinate
/// vectors read as [2,0] instead of one number per line.
fn pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let inner = "  ".repeat(indent + 1);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, v)) in map.iter().enumerate() {
                out.push_str(&inner);
                let _ = write!(out, "{key:?}: ");
                pretty(v, indent + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
        Value::Array(items)
            if !items.is_empty() && items.iter().any(|v| v.is_object() || v.is_array()) =>
        {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&inner);
                pretty(v, indent + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push(']');
        }
        other => out.push_str(&compact(other)),
    }
}

/// Points as JSON arrays of coordinates.
pub fn points_json(points: &[Point]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| json!(p.coords().to_vec()))
            .collect(),
    )
}
