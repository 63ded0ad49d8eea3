//! Intel Lab sensor log ingestion.
//!
//! Lines follow `date time epoch moteid temperature humidity light voltage`.
//! Readings are bucketed onto a regular time grid by their wall-clock timestamp;
//! several readings in one bucket are averaged.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use chrono::NaiveDateTime;
use flate2::read::MultiGzDecoder;
use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::mask::{DataMatrix, ObservationMask};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeSelection {
    /// These mote IDs, one matrix row each, in the given order.
    Explicit(Vec<u32>),
    /// The `k` smallest mote IDs that have at least one reading in the window.
    FirstWithCoverage(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SensorLogRequest {
    pub nodes: NodeSelection,
    /// Start of the grid, in seconds since 1970-01-01 00:00:00 (log timestamps are taken as UTC).
    pub start_epoch: i64,
    pub cols: usize,
    pub interval_s: u32,
}

impl SensorLogRequest {
    fn validate(&self) -> Result<()> {
        if self.cols == 0 {
            return Err(invalid("cols", "must be at least 1"));
        }
        if self.interval_s == 0 {
            return Err(invalid("interval_s", "must be at least 1"));
        }
        match &self.nodes {
            NodeSelection::Explicit(ids) if ids.is_empty() => Err(invalid("nodes", "no node ids given")),
            NodeSelection::FirstWithCoverage(0) => Err(invalid("nodes", "must select at least one node")),
            _ => Ok(()),
        }
    }

    fn slot(&self, ts: f64) -> Option<usize> {
        let offset = (ts - self.start_epoch as f64) / f64::from(self.interval_s);
        (offset >= 0.0 && offset < self.cols as f64).then_some(offset as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IngestedData {
    /// Averaged temperature per (node, slot); missing cells hold `NaN`.
    pub data: DataMatrix,
    /// Cells with at least one reading.
    pub present: ObservationMask,
    pub node_ids: Vec<u32>,
    /// Lines that could not be parsed.
    pub skipped: usize,
}

/// Seconds since the Unix epoch for `date time` fields, e.g. `2004-02-28 00:59:16.02785`.
pub fn parse_timestamp(date: &str, time: &str) -> Option<f64> {
    let dt = NaiveDateTime::parse_from_str(&format!("{date} {time}"), "%Y-%m-%d %H:%M:%S%.f").ok()?;
    let utc = dt.and_utc();
    Some(utc.timestamp() as f64 + f64::from(utc.timestamp_subsec_nanos()) * 1e-9)
}

struct Reading {
    ts: f64,
    mote: u32,
    temperature: f64,
}

fn parse_line(line: &str) -> Option<Reading> {
    let mut f = line.split_whitespace();
    let (date, time, _epoch, mote, temp) = (f.next()?, f.next()?, f.next()?, f.next()?, f.next()?);
    let temperature: f64 = temp.parse().ok()?;
    if !temperature.is_finite() {
        return None;
    }
    Some(Reading {
        ts: parse_timestamp(date, time)?,
        mote: mote.parse().ok()?,
        temperature,
    })
}

/// Single pass over the log, bucketing temperatures onto the requested grid.
pub fn parse_sensor_log(reader: impl BufRead, request: &SensorLogRequest) -> Result<IngestedData> {
    request.validate()?;
    let mut sums: BTreeMap<u32, Vec<(f64, u32)>> = BTreeMap::new();
    let (mut usable, mut skipped) = (0usize, 0usize);
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let Some(r) = parse_line(&line) else {
            skipped += 1;
            continue;
        };
        usable += 1;
        if let Some(slot) = request.slot(r.ts) {
            let row = sums.entry(r.mote).or_insert_with(|| vec![(0.0, 0); request.cols]);
            row[slot].0 += r.temperature;
            row[slot].1 += 1;
        }
    }
    if usable == 0 {
        return Err(Error::NoData(format!("no usable sensor readings ({skipped} malformed lines)")));
    }
    if sums.is_empty() {
        return Err(Error::NoData("no readings fall inside the requested window".into()));
    }
    let node_ids: Vec<u32> = match &request.nodes {
        NodeSelection::Explicit(ids) => ids.clone(),
        NodeSelection::FirstWithCoverage(k) => {
            if sums.len() < *k {
                return Err(Error::NoData(format!(
                    "only {} nodes have readings in the window, {k} requested",
                    sums.len()
                )));
            }
            sums.keys().take(*k).copied().collect()
        }
    };
    let n = node_ids.len();
    let mut data = DMatrix::from_element(n, request.cols, f64::NAN);
    let mut present = ObservationMask::empty(n, request.cols);
    for (i, id) in node_ids.iter().enumerate() {
        let Some(row) = sums.get(id) else { continue };
        for (j, &(sum, count)) in row.iter().enumerate() {
            if count > 0 {
                data[(i, j)] = sum / f64::from(count);
                present.set(i, j, true);
            }
        }
    }
    Ok(IngestedData {
        data,
        present,
        node_ids,
        skipped,
    })
}

/// Opens a plain or gzip-compressed log file (detected by its magic bytes).
pub fn read_sensor_log(path: impl AsRef<Path>, request: &SensorLogRequest) -> Result<IngestedData> {
    let mut file = BufReader::new(File::open(path)?);
    let gz = file.fill_buf()?.starts_with(&[0x1f, 0x8b]);
    if gz {
        parse_sensor_log(BufReader::new(MultiGzDecoder::new(file)), request)
    } else {
        parse_sensor_log(file, request)
    }
}
