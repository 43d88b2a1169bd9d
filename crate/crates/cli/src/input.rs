//! CSV ingestion with per-line diagnostics.
//!
//! Every reader insists on an exact header and reports violations with the
//! file name and one-based line number of the offending row.

use anyhow::{anyhow, bail, Context, Result};
use dcfreg_core::{
    AwsRecord, ContinuousFlow, CostProfile, CriteriaObservation, Dataset, Matrix, OneTimeEvent,
};
use std::fs::File;
use std::path::Path;

fn open(path: &Path) -> Result<csv::Reader<File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open {}", path.display()))
}

fn check_header(path: &Path, reader: &mut csv::Reader<File>, expected: &[&str]) -> Result<()> {
    let headers = reader
        .headers()
        .with_context(|| format!("{}: cannot read header", path.display()))?;
    let names: Vec<&str> = headers.iter().collect();
    if names != expected {
        bail!(
            "{}: expected header '{}', got '{}'",
            path.display(),
            expected.join(","),
            names.join(",")
        );
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn parse_number(path: &Path, line: u64, column: &str, raw: &str) -> Result<f64> {
    let value: f64 = raw.parse().map_err(|_| {
        anyhow!(
            "{} line {line}: column '{column}': invalid number '{raw}'",
            path.display()
        )
    })?;
    if !value.is_finite() {
        bail!(
            "{} line {line}: column '{column}': value must be finite",
            path.display()
        );
    }
    Ok(value)
}

/// Reads records from a `amount,time` file.
pub fn read_events(path: &Path) -> Result<Vec<OneTimeEvent>> {
    let mut reader = open(path)?;
    check_header(path, &mut reader, &["amount", "time"])?;
    let mut events = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        let amount = parse_number(path, line, "amount", &record[0])?;
        let time = parse_number(path, line, "time", &record[1])?;
        let event = OneTimeEvent::new(amount, time)
            .map_err(|e| anyhow!("{} line {line}: {e}", path.display()))?;
        events.push(event);
    }
    Ok(events)
}

/// Reads records from a `rate,start,end` file.
pub fn read_flows(path: &Path) -> Result<Vec<ContinuousFlow>> {
    let mut reader = open(path)?;
    check_header(path, &mut reader, &["rate", "start", "end"])?;
    let mut flows = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        let rate = parse_number(path, line, "rate", &record[0])?;
        let start = parse_number(path, line, "start", &record[1])?;
        let end = parse_number(path, line, "end", &record[2])?;
        let flow = ContinuousFlow::new(rate, start, end)
            .map_err(|e| anyhow!("{} line {line}: {e}", path.display()))?;
        flows.push(flow);
    }
    Ok(flows)
}

/// Reads a sampled cost curve from a `time,rate` file. The profile spans
/// from its first to its last sample.
pub fn read_profile(path: &Path) -> Result<CostProfile> {
    let mut reader = open(path)?;
    check_header(path, &mut reader, &["time", "rate"])?;
    let mut samples: Vec<(f64, f64)> = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        let time = parse_number(path, line, "time", &record[0])?;
        let rate = parse_number(path, line, "rate", &record[1])?;
        if time < 0.0 {
            bail!(
                "{} line {line}: time must be non-negative, got {time}",
                path.display()
            );
        }
        if let Some((previous, _)) = samples.last() {
            if time <= *previous {
                bail!(
                    "{} line {line}: sample times must be strictly increasing",
                    path.display()
                );
            }
        }
        samples.push((time, rate));
    }
    let duration = samples.last().map(|(t, _)| *t).unwrap_or(0.0);
    CostProfile::new(samples, duration).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Reads a regression dataset: one header row, feature columns followed by
/// the target as the last column.
pub fn read_dataset(path: &Path) -> Result<Dataset> {
    let mut reader = open(path)?;
    let headers: Vec<String> = reader
        .headers()
        .with_context(|| format!("{}: cannot read header", path.display()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if headers.len() < 2 {
        bail!(
            "{}: need at least one feature column and one target column",
            path.display()
        );
    }
    let n_features = headers.len() - 1;

    let mut entries = Vec::new();
    let mut targets = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        for (name, raw) in headers.iter().zip(record.iter()) {
            let value = parse_number(path, line, name, raw)?;
            if name == headers.last().expect("non-empty header") {
                targets.push(value);
            } else {
                entries.push(value);
            }
        }
    }

    let rows = targets.len();
    if rows == 0 {
        bail!("{}: no data rows", path.display());
    }
    let features =
        Matrix::new(rows, n_features, entries).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Dataset::new(features, targets)
        .and_then(|d| d.with_names(headers[..n_features].to_vec()))
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Reads weight records from a `label,aws1,aws2,aws3` file.
pub fn read_aws(path: &Path) -> Result<Vec<AwsRecord>> {
    let mut reader = open(path)?;
    check_header(path, &mut reader, &["label", "aws1", "aws2", "aws3"])?;
    let mut records = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        let label = match &record[0] {
            "" => None,
            text => Some(text.to_owned()),
        };
        let aws1 = parse_number(path, line, "aws1", &record[1])?;
        let aws2 = parse_number(path, line, "aws2", &record[2])?;
        let aws3 = parse_number(path, line, "aws3", &record[3])?;
        let parsed = AwsRecord::new(label, aws1, aws2, aws3)
            .map_err(|e| anyhow!("{} line {line}: {e}", path.display()))?;
        records.push(parsed);
    }
    Ok(records)
}

/// Reads observations from a `r_bar,csr,lr,ir,cfr` file.
pub fn read_criteria(path: &Path) -> Result<Vec<CriteriaObservation>> {
    let mut reader = open(path)?;
    check_header(path, &mut reader, &["r_bar", "csr", "lr", "ir", "cfr"])?;
    let mut observations = Vec::new();
    for row in reader.records() {
        let record = row.with_context(|| format!("{}", path.display()))?;
        let line = record_line(&record);
        let mut values = [0.0; 5];
        for (slot, (column, raw)) in values.iter_mut().zip(
            ["r_bar", "csr", "lr", "ir", "cfr"]
                .iter()
                .zip(record.iter()),
        ) {
            *slot = parse_number(path, line, column, raw)?;
        }
        let observation =
            CriteriaObservation::new(values[0], values[1], values[2], values[3], values[4])
                .map_err(|e| anyhow!("{} line {line}: {e}", path.display()))?;
        observations.push(observation);
    }
    Ok(observations)
}
