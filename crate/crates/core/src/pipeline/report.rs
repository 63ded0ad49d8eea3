use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::Method;

pub const HEADER: &str = "method,loss_pct,trial,nmse,iterations,wall_time_s,lambda_used";

/// One (method, loss, trial) result. A failed run has `nmse = NaN` and the
/// reason in `error`; the reason is not part of the CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub loss_pct: f64,
    pub trial: usize,
    pub nmse: f64,
    pub iterations: usize,
    pub wall_time_s: f64,
    pub lambda_used: f64,
    pub error: Option<String>,
}

impl ReportRow {
    pub fn failed(&self) -> bool {
        self.nmse.is_nan()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RecoveryReport {
    pub rows: Vec<ReportRow>,
}

/// Mean and standard deviation of NMSE over the successful trials of one
/// (method, loss) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    pub loss_pct: f64,
    pub mean_nmse: f64,
    pub std_nmse: f64,
    pub trials: usize,
    pub failures: usize,
}

/// `10·log10(baseline / method)`.
pub fn improvement_db(baseline_nmse: f64, method_nmse: f64) -> f64 {
    10.0 * (baseline_nmse / method_nmse).log10()
}

impl RecoveryReport {
    /// Orders rows by (method position in `methods`, loss, trial).
    pub fn sort_canonical(&mut self, methods: &[Method]) {
        let rank = |m: &Method| methods.iter().position(|x| x == m).unwrap_or(usize::MAX);
        self.rows.sort_by(|a, b| {
            rank(&a.method)
                .cmp(&rank(&b.method))
                .then(a.loss_pct.total_cmp(&b.loss_pct))
                .then(a.trial.cmp(&b.trial))
        });
    }

    pub fn emit_csv(&self, mut w: impl Write) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::NoData("report has no rows".into()));
        }
        writeln!(w, "{HEADER}")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.method, r.loss_pct, r.trial, r.nmse, r.iterations, r.wall_time_s, r.lambda_used
            )?;
        }
        Ok(())
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.emit_csv(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn parse_csv(mut r: impl Read) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header `{HEADER}`"),
                })
            }
        }
        let mut rows = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: idx + 1, message };
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 7 {
                return Err(bad(format!("expected 7 fields, found {}", f.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
            let int = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("`{s}` is not a count")));
            rows.push(ReportRow {
                method: f[0].parse().map_err(|e: Error| bad(e.to_string()))?,
                loss_pct: num(f[1])?,
                trial: int(f[2])?,
                nmse: num(f[3])?,
                iterations: int(f[4])?,
                wall_time_s: num(f[5])?,
                lambda_used: num(f[6])?,
                error: None,
            });
        }
        Ok(Self { rows })
    }

    /// Per (method, loss) statistics, in first-appearance order.
    pub fn summary(&self) -> Vec<MethodSummary> {
        let mut keys: Vec<(Method, f64)> = Vec::new();
        for r in &self.rows {
            if !keys.iter().any(|&(m, l)| m == r.method && l == r.loss_pct) {
                keys.push((r.method, r.loss_pct));
            }
        }
        keys.into_iter()
            .map(|(method, loss_pct)| {
                let cell: Vec<&ReportRow> = self
                    .rows
                    .iter()
                    .filter(|r| r.method == method && r.loss_pct == loss_pct)
                    .collect();
                let ok: Vec<f64> = cell.iter().filter(|r| !r.failed()).map(|r| r.nmse).collect();
                let n = ok.len() as f64;
                let mean = ok.iter().sum::<f64>() / n;
                let var = if ok.len() > 1 {
                    ok.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
                } else {
                    0.0
                };
                MethodSummary {
                    method,
                    loss_pct,
                    mean_nmse: mean,
                    std_nmse: var.sqrt(),
                    trials: ok.len(),
                    failures: cell.len() - ok.len(),
                }
            })
            .collect()
    }

    /// Mean NMSE of `method` at `loss_pct`, if any trial succeeded.
    pub fn mean_nmse(&self, method: Method, loss_pct: f64) -> Option<f64> {
        self.summary()
            .into_iter()
            .find(|s| s.method == method && s.loss_pct == loss_pct && s.trials > 0)
            .map(|s| s.mean_nmse)
    }

    pub fn emit_summary_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "method,loss_pct,mean_nmse,std_nmse,trials,failures")?;
        for s in self.summary() {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                s.method, s.loss_pct, s.mean_nmse, s.std_nmse, s.trials, s.failures
            )?;
        }
        Ok(())
    }
}
