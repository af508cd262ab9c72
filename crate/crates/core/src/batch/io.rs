use std::io::{BufRead, BufReader, Lines, Read, Write};

use super::{BatchError, Format};

/// One input record as ordered key/value text, with its starting line.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub line: u64,
    pub fields: Vec<(String, String)>,
}

/// Streams [`RawRecord`]s from CSV or JSON lines.
pub enum RecordReader<R: Read> {
    Csv {
        headers: Vec<String>,
        records: csv::StringRecordsIntoIter<R>,
    },
    Jsonl {
        lines: Lines<BufReader<R>>,
        line: u64,
    },
}

impl<R: Read> RecordReader<R> {
    pub fn new(input: R, format: Format) -> Result<Self, BatchError> {
        match format {
            Format::Csv => {
                let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
                let headers = reader.headers().map_err(csv_error)?.iter().map(str::to_owned).collect();
                Ok(RecordReader::Csv {
                    headers,
                    records: reader.into_records(),
                })
            }
            Format::Jsonl => Ok(RecordReader::Jsonl {
                lines: BufReader::new(input).lines(),
                line: 0,
            }),
        }
    }
}

fn csv_error(e: csv::Error) -> BatchError {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => BatchError::Io(io),
        other => BatchError::parse(line, format!("malformed CSV: {other:?}")),
    }
}

impl<R: Read> Iterator for RecordReader<R> {
    type Item = Result<RawRecord, BatchError>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            RecordReader::Csv { headers, records } => {
                let record = match records.next()? {
                    Ok(r) => r,
                    Err(e) => return Some(Err(csv_error(e))),
                };
                let line = record.position().map_or(0, |p| p.line());
                let fields = headers.iter().cloned().zip(record.iter().map(str::to_owned)).collect();
                Some(Ok(RawRecord { line, fields }))
            }
            RecordReader::Jsonl { lines, line } => loop {
                let text = match lines.next()? {
                    Ok(t) => t,
                    Err(e) => return Some(Err(BatchError::Io(e))),
                };
                *line += 1;
                if text.trim().is_empty() {
                    continue;
                }
                return Some(parse_json_line(*line, &text));
            },
        }
    }
}

fn parse_json_line(line: u64, text: &str) -> Result<RawRecord, BatchError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| BatchError::parse(line, format!("malformed JSON: {e}")))?;
    let serde_json::Value::Object(map) = value else {
        return Err(BatchError::parse(line, "expected a JSON object"));
    };
    let fields = map
        .into_iter()
        .map(|(k, v)| {
            let text = match v {
                serde_json::Value::Null => String::new(),
                serde_json::Value::String(s) => s,
                serde_json::Value::Array(items) => items
                    .iter()
                    .map(|i| i.as_str().map_or_else(|| i.to_string(), str::to_owned))
                    .collect::<Vec<_>>()
                    .join("; "),
                other => other.to_string(),
            };
            (k, text)
        })
        .collect();
    Ok(RawRecord { line, fields })
}

/// An output value.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
    /// Carried-through metadata: a JSON number when it reads as one, a string
    /// otherwise.
    Meta(String),
    List(Vec<String>),
    Empty,
}

impl Field {
    fn csv_text(&self) -> String {
        match self {
            Field::Num(x) => format_number(*x),
            Field::Text(s) | Field::Meta(s) => s.clone(),
            Field::List(items) => items.join("; "),
            Field::Empty => String::new(),
        }
    }

    fn json_text(&self) -> String {
        let quote = |s: &str| serde_json::Value::String(s.to_owned()).to_string();
        match self {
            Field::Num(x) if x.is_finite() => format_number(*x),
            Field::Num(_) | Field::Empty => "null".into(),
            Field::Text(s) => quote(s),
            Field::Meta(s) => {
                if serde_json::from_str::<serde_json::Number>(s).is_ok() {
                    s.clone()
                } else {
                    quote(s)
                }
            }
            Field::List(items) => serde_json::Value::from(items.clone()).to_string(),
        }
    }
}

/// Twelve significant digits, shortest text that reproduces the rounded value.
/// Plain notation for magnitudes in `[1e-5, 1e12)`, exponent form otherwise.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-5..1e12).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Writes rows of ordered fields as CSV (header taken from the first row) or
/// JSON lines.
pub enum RecordWriter<W: Write> {
    Csv {
        writer: csv::Writer<W>,
        header: Option<Vec<String>>,
    },
    Jsonl(W),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(output: W, format: Format) -> Self {
        match format {
            Format::Csv => RecordWriter::Csv {
                writer: csv::Writer::from_writer(output),
                header: None,
            },
            Format::Jsonl => RecordWriter::Jsonl(output),
        }
    }

    pub fn write(&mut self, row: &[(String, Field)]) -> Result<(), BatchError> {
        match self {
            RecordWriter::Csv { writer, header } => {
                let header = match header {
                    Some(h) => h,
                    None => {
                        let h: Vec<String> = row.iter().map(|(k, _)| k.clone()).collect();
                        writer.write_record(&h).map_err(csv_error)?;
                        header.insert(h)
                    }
                };
                let cells = header.iter().map(|key| {
                    row.iter()
                        .find(|(k, _)| k == key)
                        .map_or_else(String::new, |(_, f)| f.csv_text())
                });
                writer.write_record(cells).map_err(csv_error)
            }
            RecordWriter::Jsonl(out) => {
                let body: Vec<String> = row
                    .iter()
                    .map(|(k, f)| format!("{}:{}", serde_json::Value::String(k.clone()), f.json_text()))
                    .collect();
                writeln!(out, "{{{}}}", body.join(","))?;
                Ok(())
            }
        }
    }

    pub fn flush(&mut self) -> Result<(), BatchError> {
        match self {
            RecordWriter::Csv { writer, .. } => writer.flush()?,
            RecordWriter::Jsonl(out) => out.flush()?,
        }
        Ok(())
    }
}
