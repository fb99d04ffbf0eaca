use std::io::{self, Write};
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::args::Output;

/// Everything a command prints: the resolved parameters, scalar results
/// and an optional table.
pub struct Report {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub fields: Vec<(String, Value)>,
    pub table: Option<Table>,
    /// Wall-clock time, emitted for commands whose timing is part of the output.
    pub elapsed: Option<Duration>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), params: Vec::new(), fields: Vec::new(), table: None, elapsed: None }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn emit(&self, out: Output) -> io::Result<()> {
        let stdout = io::stdout();
        let mut w = stdout.lock();
        if out.json {
            serde_json::to_writer_pretty(&mut w, &self.to_json())?;
            writeln!(w)
        } else if out.csv {
            // Parameters go to stderr so stdout stays a plain table.
            for (k, v) in &self.params {
                eprintln!("# {k} = {v}");
            }
            self.write_csv(&mut w)
        } else {
            self.write_text(&mut w)
        }
    }

    fn to_json(&self) -> Value {
        let params: Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let mut result: Map<String, Value> = self.fields.iter().cloned().collect();
        if let Some(t) = &self.table {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| Value::Object(t.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            result.insert("rows".into(), Value::Array(rows));
        }
        let mut top = json!({ "command": self.command, "params": params, "result": result });
        if let Some(e) = self.elapsed {
            top["elapsed_ms"] = json!(e.as_millis() as u64);
        }
        top
    }

    fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        match &self.table {
            Some(t) => {
                wr.write_record(&t.header)?;
                for r in &t.rows {
                    wr.write_record(r)?;
                }
            }
            None => {
                wr.write_record(["key", "value"])?;
                for (k, v) in &self.fields {
                    wr.write_record([k.as_str(), &plain(v)])?;
                }
            }
        }
        wr.flush()
    }

    fn write_text(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "# {}", self.command)?;
        for (k, v) in &self.params {
            writeln!(w, "# {k} = {v}")?;
        }
        for (k, v) in &self.fields {
            writeln!(w, "{k}: {}", plain(v))?;
        }
        if let Some(t) = &self.table {
            let widths: Vec<usize> = (0..t.header.len())
                .map(|i| t.rows.iter().map(|r| r[i].len()).chain([t.header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| -> String {
                let last = cells.len() - 1;
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i == last { c.clone() } else { format!("{c:>w$}", w = widths[i]) })
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(w, "{}", line(&t.header))?;
            for r in &t.rows {
                writeln!(w, "{}", line(r))?;
            }
        }
        if let Some(e) = self.elapsed {
            writeln!(w, "elapsed: {:.3} s", e.as_secs_f64())?;
        }
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
