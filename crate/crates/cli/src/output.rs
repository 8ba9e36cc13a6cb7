//! Report emission: a versioned header line followed by one record per
//! document, as line-delimited JSON (default) or a CSV table with the same
//! column names. Default output carries no timestamps, so identical
//! invocations produce byte-identical reports.

use std::borrow::Cow;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::OutputFormat;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Header<'a> {
    schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    command: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at_unix: Option<u64>,
}

pub struct Reporter {
    sink: BufWriter<Box<dyn Write>>,
    format: OutputFormat,
    /// Command line to record in the header, when provenance was requested.
    meta_command: Option<String>,
    header_written: bool,
}

impl Reporter {
    pub fn new(
        output: Option<&Path>,
        format: OutputFormat,
        meta_command: Option<String>,
    ) -> Result<Self, CliError> {
        let sink: Box<dyn Write> = match output {
            Some(path) => Box::new(File::create(path).map_err(|e| {
                CliError::Invalid(format!("cannot open output file {}: {e}", path.display()))
            })?),
            None => Box::new(io::stdout()),
        };
        Ok(Self {
            sink: BufWriter::new(sink),
            format,
            meta_command,
            header_written: false,
        })
    }

    /// Writes one report record. The column list fixes CSV layout and must
    /// name every serialized field of `record`.
    pub fn emit<T: Serialize>(&mut self, record: &T, columns: &[&str]) -> Result<(), CliError> {
        self.write_header_once(columns)?;
        match self.format {
            OutputFormat::Jsonl => {
                let line = serde_json::to_string(record).expect("report serialization");
                writeln!(self.sink, "{line}")?;
            }
            OutputFormat::Csv => {
                let value = serde_json::to_value(record).expect("report serialization");
                let row: Vec<String> = columns
                    .iter()
                    .map(|col| csv_cell(value.get(*col)).into_owned())
                    .collect();
                writeln!(self.sink, "{}", row.join(","))?;
            }
        }
        // Records stream out as soon as they are computed.
        self.sink.flush()?;
        Ok(())
    }

    fn write_header_once(&mut self, columns: &[&str]) -> Result<(), CliError> {
        if self.header_written {
            return Ok(());
        }
        self.header_written = true;
        match self.format {
            OutputFormat::Jsonl => {
                let header = Header {
                    schema: SCHEMA_VERSION,
                    command: self.meta_command.as_deref(),
                    generated_at_unix: self.meta_command.as_ref().map(|_| {
                        SystemTime::now()
                            .duration_since(UNIX_EPOCH)
                            .map(|d| d.as_secs())
                            .unwrap_or(0)
                    }),
                };
                let line = serde_json::to_string(&header).expect("header serialization");
                writeln!(self.sink, "{line}")?;
            }
            OutputFormat::Csv => {
                writeln!(self.sink, "{}", columns.join(","))?;
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.sink.flush()?;
        Ok(())
    }
}

/// Scalar JSON values print bare; arrays and objects stay JSON-encoded
/// inside the cell. Quoting follows RFC 4180.
fn csv_cell(value: Option<&serde_json::Value>) -> Cow<'static, str> {
    use serde_json::Value;
    let raw = match value {
        None | Some(Value::Null) => String::new(),
        Some(Value::Bool(b)) => b.to_string(),
        Some(Value::Number(n)) => n.to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    if raw.contains(['"', ',', '\n', '\r']) {
        Cow::Owned(format!("\"{}\"", raw.replace('"', "\"\"")))
    } else {
        Cow::Owned(raw)
    }
}
