//! Report rendering. Every report is a sequence of JSON objects; CSV and
//! text flatten nested fields into dotted column names.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::{Failure, Format, Opts};

pub struct Emitter {
    format: Format,
    sink: Box<dyn Write>,
    csv_header: Option<Vec<String>>,
    records: usize,
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten_into(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten_into(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into("", v, &mut out);
    out
}

fn io_err(e: io::Error) -> Failure {
    Failure::Input(format!("writing report: {e}"))
}

impl Emitter {
    pub fn open(opts: &Opts) -> Result<Self, Failure> {
        let sink: Box<dyn Write> = match &opts.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Emitter {
            format: opts.format,
            sink,
            csv_header: None,
            records: 0,
        })
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> Result<(), Failure> {
        let value = serde_json::to_value(record).map_err(|e| Failure::Input(e.to_string()))?;
        match self.format {
            Format::Json => writeln!(self.sink, "{value}").map_err(io_err)?,
            Format::Csv => self.csv_row(&value)?,
            Format::Text => {
                if self.records > 0 {
                    writeln!(self.sink).map_err(io_err)?;
                }
                for (k, v) in flatten(&value) {
                    writeln!(self.sink, "{k}: {}", if v.is_empty() { "-" } else { &v }).map_err(io_err)?;
                }
            }
        }
        self.records += 1;
        Ok(())
    }

    /// A new header row is written whenever the column set changes, so a
    /// stream of records followed by a summary stays readable.
    fn csv_row(&mut self, value: &Value) -> Result<(), Failure> {
        let flat = flatten(value);
        let header: Vec<String> = flat.iter().map(|(k, _)| k.clone()).collect();
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if self.csv_header.as_ref() != Some(&header) {
            w.write_record(&header).map_err(|e| Failure::Input(e.to_string()))?;
            self.csv_header = Some(header);
        }
        w.write_record(flat.iter().map(|(_, v)| v)).map_err(|e| Failure::Input(e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
        self.sink.write_all(&bytes).map_err(io_err)
    }

    pub fn flush(&mut self) -> Result<(), Failure> {
        self.sink.flush().map_err(io_err)
    }

    pub fn finish(mut self) -> Result<(), Failure> {
        self.flush()
    }
}

/// `{"finding": {...}}`, the record written for every contradicted claim.
pub fn finding(kind: &str, detail: Value) -> Value {
    let mut inner = Map::new();
    inner.insert("kind".into(), Value::String(kind.into()));
    if let Value::Object(m) = detail {
        inner.extend(m);
    }
    let mut outer = Map::new();
    outer.insert("finding".into(), Value::Object(inner));
    Value::Object(outer)
}
