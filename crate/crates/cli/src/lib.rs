//! Command-line front end: subcommand dispatch, scan configuration and the
//! JSONL/CSV formats.

pub mod args;
mod commands;
pub mod config;
pub mod format;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use satotate::stats::ScanRecord;

pub use args::Cli;
pub use commands::run;

/// Failure with a process exit code attached.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("validation failed: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Validation(_) => 4,
        }
    }

    fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<satotate::Error> for CliError {
    fn from(e: satotate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Output sink: a file or standard output.
pub(crate) struct Output {
    label: PathBuf,
    inner: Box<dyn Write>,
}

impl Output {
    pub(crate) fn open(path: Option<&Path>) -> CliResult<Self> {
        match path {
            Some(p) => {
                let f = File::create(p).map_err(|e| CliError::io(p, e))?;
                Ok(Output {
                    label: p.to_path_buf(),
                    inner: Box::new(BufWriter::new(f)),
                })
            }
            None => Ok(Output {
                label: PathBuf::from("<stdout>"),
                inner: Box::new(BufWriter::new(io::stdout())),
            }),
        }
    }

    pub(crate) fn write_all(&mut self, bytes: &[u8]) -> CliResult<()> {
        self.inner
            .write_all(bytes)
            .map_err(|e| CliError::io(&self.label, e))
    }

    pub(crate) fn finish(mut self) -> CliResult<()> {
        self.inner.flush().map_err(|e| CliError::io(&self.label, e))
    }
}

/// One JSON object per line, in the given order.
pub fn records_to_jsonl(records: &[ScanRecord]) -> String {
    let mut s = String::new();
    for r in records {
        s.push_str(&serde_json::to_string(r).expect("records serialize"));
        s.push('\n');
    }
    s
}

/// Reads and validates a JSONL scan file. A missing or unreadable file is an
/// I/O failure; malformed or inconsistent lines and an empty file are input
/// errors.
pub fn read_records(path: &Path) -> CliResult<Vec<ScanRecord>> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ScanRecord = serde_json::from_str(&line)
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        rec.validate()
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        records.push(rec);
    }
    if records.is_empty() {
        return Err(CliError::Usage(format!("{}: no scan records", path.display())));
    }
    Ok(records)
}

/// Parses comma-separated integer coefficients given highest degree first
/// and returns them in ascending order.
pub fn parse_poly(s: &str) -> CliResult<Vec<i64>> {
    let mut coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad coefficient `{}` in `{s}`", t.trim())))
        })
        .collect::<CliResult<Vec<_>>>()?;
    coeffs.reverse();
    Ok(coeffs)
}
