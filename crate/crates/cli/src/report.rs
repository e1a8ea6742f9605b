use std::io::{self, Write};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run (sampling exhausted, unsupported input).
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

/// One (claim, signature) result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub claim: String,
    pub signature: String,
    pub status: Status,
    pub checked: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Jsonl,
}

pub fn write_records(out: &mut impl Write, records: &[Record], format: Format) -> io::Result<()> {
    for r in records {
        match format {
            Format::Jsonl => writeln!(out, "{}", serde_json::to_string(r).expect("plain data"))?,
            Format::Human => {
                write!(out, "{:5} {:10} {}  [{} checked] {}", r.status.label(), r.signature, r.claim, r.checked, r.detail)?;
                if let Some(w) = &r.witness {
                    write!(out, "  witness: {w}")?;
                }
                if let Some(ms) = r.elapsed_ms {
                    write!(out, "  ({ms:.1} ms)")?;
                }
                writeln!(out)?;
            }
        }
    }
    if format == Format::Human {
        let failed = records.iter().filter(|r| !r.passed()).count();
        writeln!(out, "{} records, {} passed, {} failed", records.len(), records.len() - failed, failed)?;
    }
    Ok(())
}
