//! Batch processing behind the `star-solve` binary.
//!
//! Records are read and written one at a time in CSV (header
//! `id,u1,u2,u3,psi1,psi2`, extra columns carried along as metadata) or JSON
//! lines with the same field names. Angles are in degrees.

mod io;
mod solve;
mod synth;
mod verify;

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use thiserror::Error;

pub use io::{format_number, Field, RawRecord, RecordReader, RecordWriter};
pub use solve::{run_solve, solve_record, SolutionRecord, Status};
pub use synth::{run_synth, synth_records, SynthOptions};
pub use verify::{run_verify, verify_record, VerifyOutcome};

/// Environment variable that overrides the default closure tolerance.
pub const TOLERANCE_ENV: &str = "STAR_SOLVE_TOLERANCE";

/// Records per parallel work unit; bounds memory when `--parallel` is set.
pub const CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    /// Guess from a file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::Csv),
            "jsonl" | "ndjson" | "json" => Some(Format::Jsonl),
            _ => None,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format '{other}' (expected csv or jsonl)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("{0}")]
    Usage(String),
}

impl BatchError {
    pub fn parse(line: u64, message: impl Into<String>) -> Self {
        BatchError::Parse {
            line,
            message: message.into(),
        }
    }
}

/// Process exit status of a batch run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Every record succeeded.
    AllPassed,
    /// At least one record failed.
    SomeFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::AllPassed => 0,
            Outcome::SomeFailed => 2,
        }
    }
}

/// One measurement: voltages, optional phase differences, free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub id: String,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub psi1: Option<f64>,
    pub psi2: Option<f64>,
    /// Extra columns in input order.
    pub meta: Vec<(String, String)>,
    /// Input line, for messages.
    pub line: u64,
}

const MEASUREMENT_FIELDS: [&str; 6] = ["id", "u1", "u2", "u3", "psi1", "psi2"];

impl MeasurementRecord {
    /// Takes the measurement columns out of a raw record; everything else
    /// goes to `meta`.
    pub fn from_raw(raw: RawRecord) -> Result<Self, BatchError> {
        let line = raw.line;
        let mut known: [Option<String>; 6] = Default::default();
        let mut meta = Vec::new();
        for (key, value) in raw.fields {
            match MEASUREMENT_FIELDS.iter().position(|k| *k == key) {
                Some(i) => known[i] = Some(value),
                None => meta.push((key, value)),
            }
        }
        let [id, u1, u2, u3, psi1, psi2] = known;
        let id = id.ok_or_else(|| BatchError::parse(line, "missing field 'id'"))?;
        let required = |name: &str, v: Option<String>| -> Result<f64, BatchError> {
            let v = v.filter(|s| !s.is_empty());
            let v = v.ok_or_else(|| BatchError::parse(line, format!("missing field '{name}'")))?;
            parse_number(line, name, &v)
        };
        let optional = |name: &str, v: Option<String>| -> Result<Option<f64>, BatchError> {
            match v.filter(|s| !s.is_empty()) {
                None => Ok(None),
                Some(s) => parse_number(line, name, &s).map(Some),
            }
        };
        let record = MeasurementRecord {
            id,
            u1: required("u1", u1)?,
            u2: required("u2", u2)?,
            u3: required("u3", u3)?,
            psi1: optional("psi1", psi1)?,
            psi2: optional("psi2", psi2)?,
            meta,
            line,
        };
        if record.psi1.is_some() != record.psi2.is_some() {
            return Err(BatchError::parse(line, "psi1 and psi2 must be given together"));
        }
        Ok(record)
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Measurement columns in output form.
    fn fields(&self) -> Vec<(String, Field)> {
        vec![
            ("id".into(), Field::Text(self.id.clone())),
            ("u1".into(), Field::Num(self.u1)),
            ("u2".into(), Field::Num(self.u2)),
            ("u3".into(), Field::Num(self.u3)),
            ("psi1".into(), self.psi1.map_or(Field::Empty, Field::Num)),
            ("psi2".into(), self.psi2.map_or(Field::Empty, Field::Num)),
        ]
    }
}

pub(crate) fn parse_number(line: u64, name: &str, s: &str) -> Result<f64, BatchError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| BatchError::parse(line, format!("field '{name}' is not a number: '{s}'")))
}

/// Opens `-` as standard input, anything else as a file.
pub fn open_input(path: &str) -> Result<(Box<dyn BufRead>, Option<Format>), BatchError> {
    if path == "-" {
        return Ok((Box::new(BufReader::new(std::io::stdin())), None));
    }
    let file = std::fs::File::open(path).map_err(|e| BatchError::Usage(format!("cannot open '{path}': {e}")))?;
    Ok((Box::new(BufReader::new(file)), Format::from_path(Path::new(path))))
}

/// Input format: explicit hint, else the first non-blank byte (`{` means
/// JSON lines), else CSV.
pub fn detect_format(input: &mut dyn BufRead, hint: Option<Format>) -> Result<Format, BatchError> {
    if let Some(f) = hint {
        return Ok(f);
    }
    loop {
        let buf = input.fill_buf()?;
        if buf.is_empty() {
            return Ok(Format::Csv);
        }
        let skip = buf.iter().take_while(|b| b.is_ascii_whitespace()).count();
        if skip < buf.len() {
            return Ok(if buf[skip] == b'{' { Format::Jsonl } else { Format::Csv });
        }
        let n = buf.len();
        input.consume(n);
    }
}

/// Closure tolerance: explicit flag, else the environment, else the default.
pub fn resolve_tolerance(flag: Option<f64>) -> Result<f64, BatchError> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(TOLERANCE_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| BatchError::Usage(format!("{TOLERANCE_ENV}='{s}' is not a number")))?,
            Err(_) => crate::tolerance::CLOSURE,
        },
    };
    if !(value > 0.0 && value.is_finite()) {
        return Err(BatchError::Usage(format!("tolerance must be positive, got {value}")));
    }
    Ok(value)
}

/// Reads records in chunks, maps each through `f` (in parallel when asked)
/// and writes the results in input order.
pub(crate) fn map_records<R, W, F>(
    reader: RecordReader<R>,
    writer: &mut RecordWriter<W>,
    parallel: bool,
    f: F,
) -> Result<Outcome, BatchError>
where
    R: Read,
    W: Write,
    F: Fn(MeasurementRecord) -> Result<(Vec<(String, Field)>, bool), BatchError> + Sync + Send,
{
    use rayon::prelude::*;

    let mut failed = false;
    let mut chunk = Vec::with_capacity(if parallel { CHUNK } else { 1 });
    let limit = if parallel { CHUNK } else { 1 };
    let mut records = reader.peekable();
    while records.peek().is_some() {
        chunk.clear();
        while chunk.len() < limit {
            match records.next() {
                Some(raw) => chunk.push(MeasurementRecord::from_raw(raw?)?),
                None => break,
            }
        }
        let rows: Vec<_> = if parallel {
            chunk.par_drain(..).map(&f).collect()
        } else {
            chunk.drain(..).map(&f).collect()
        };
        for result in rows {
            let (row, ok) = result?;
            failed |= !ok;
            writer.write(&row)?;
        }
    }
    writer.flush()?;
    Ok(if failed { Outcome::SomeFailed } else { Outcome::AllPassed })
}
