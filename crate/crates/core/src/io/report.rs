use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One search run, as written to CSV and JSON reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algo: String,
    pub seed: u64,
    pub length: f64,
    pub time_s: f64,
    pub iterations: usize,
    pub trials: u64,
    pub gap_pct: Option<f64>,
    pub hit_time_limit: bool,
}

pub const CSV_HEADER: &str = "instance,algo,seed,length,time_s,iterations,trials,gap_pct,hit_time_limit";

/// `100 * (length - reference) / reference`.
pub fn gap_pct(length: f64, reference: f64) -> f64 {
    100.0 * (length - reference) / reference
}

/// Rounds seconds to whole milliseconds.
pub fn round_ms(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn write_csv<W: Write>(records: &[RunRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let mut w = csv_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    reader.deserialize().map(|r| r.map_err(Into::into)).collect()
}

pub fn write_json<W: Write>(records: &[RunRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    Ok(serde_json::from_reader(input)?)
}
