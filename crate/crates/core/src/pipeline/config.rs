//! Sweep configuration, read from a flat `key = value` file.
//!
//! ```text
//! # synthetic field
//! dataset = synthetic
//! hurst = 0.8
//! rows = 53
//! cols = 200
//! methods = pci-mdr-temporal, pci-mdr-kron, svt, mf(1)
//! losses = 10, 50, 90
//! snr_db = 10
//! trials = 10
//! seed = 7
//! ```
//!
//! `dataset` is either `synthetic` or a path to a matrix CSV (empty cells are
//! the originally missing entries); relative paths resolve against the config
//! file's directory. `lambda1`..`lambda5` take a number or `auto`; `snr_db`
//! takes a number or `none`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::data::SyntheticSpec;
use crate::error::{invalid, Error, Result};
use crate::pipeline::Method;
use crate::solvers::{RegularizationWeights, SolverConfig};

#[derive(Clone, Debug, PartialEq)]
pub enum Dataset {
    /// A fresh field is drawn for every trial; `spec.seed` is replaced by a
    /// value derived from the sweep seed and the trial index.
    Synthetic(SyntheticSpec),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: Dataset,
    pub methods: Vec<Method>,
    /// Percentages in (0, 100).
    pub loss_levels: Vec<f64>,
    pub snr_db: Option<f64>,
    pub weights: RegularizationWeights,
    pub solver: SolverConfig,
    /// Relative-residual stopping threshold for the SVT baseline.
    pub svt_tolerance: f64,
    pub trials: usize,
    pub seed: u64,
    /// Record wall-clock times; off by default so reports are byte-reproducible.
    pub timing: bool,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dataset: Dataset::Synthetic(SyntheticSpec::new(0.8, 53, 200, 0)),
            methods: vec![
                Method::PciMdrSpatial,
                Method::PciMdrTemporal,
                Method::PciMdrKron,
                Method::PciMdrKronDenoised,
                Method::Svt,
                Method::Mf(1),
                Method::Mf(2),
            ],
            loss_levels: (1..=9).map(|k| f64::from(k) * 10.0).collect(),
            snr_db: None,
            weights: RegularizationWeights::default(),
            solver: SolverConfig::default(),
            svt_tolerance: 1e-4,
            trials: 10,
            seed: 0,
            timing: false,
            output: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| invalid_key(key, format!("cannot parse `{value}`")))
}

fn invalid_key(key: &str, reason: String) -> Error {
    Error::Parse {
        line: 0,
        message: format!("{key}: {reason}"),
    }
}

fn parse_lambda(key: &str, value: &str) -> Result<Option<f64>> {
    if value.eq_ignore_ascii_case("auto") {
        Ok(None)
    } else {
        parse(key, value).map(Some)
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(key, s))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(invalid_key(key, format!("expected true/false, got `{value}`"))),
    }
}

impl ExperimentConfig {
    /// Parses config text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut cfg = Self::default();
        let mut synth = SyntheticSpec::new(0.8, 53, 200, 0);
        let mut synthetic = true;
        let resolve = |p: &str| match base {
            Some(b) if Path::new(p).is_relative() => b.join(p),
            _ => PathBuf::from(p),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at_line = |e: Error| match e {
                Error::Parse { message, .. } => Error::Parse { line: idx + 1, message },
                other => other,
            };
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
            let k = key.as_str();
            (|| -> Result<()> {
                match k {
                    "dataset" => {
                        synthetic = value.eq_ignore_ascii_case("synthetic");
                        if !synthetic {
                            cfg.dataset = Dataset::File(resolve(value));
                        }
                    }
                    "hurst" => synth.hurst = parse(k, value)?,
                    "rows" => synth.rows = parse(k, value)?,
                    "cols" => synth.cols = parse(k, value)?,
                    "amplitude" => synth.amplitude = parse(k, value)?,
                    "methods" => cfg.methods = parse_list(k, value)?,
                    "losses" | "loss_levels" => cfg.loss_levels = parse_list(k, value)?,
                    "snr_db" => {
                        cfg.snr_db = if value.eq_ignore_ascii_case("none") {
                            None
                        } else {
                            Some(parse(k, value)?)
                        }
                    }
                    "lambda1" => cfg.weights.lambda1 = parse_lambda(k, value)?,
                    "lambda2" => cfg.weights.lambda2 = parse_lambda(k, value)?,
                    "lambda3" => cfg.weights.lambda3 = parse_lambda(k, value)?,
                    "lambda4" => cfg.weights.lambda4 = parse_lambda(k, value)?,
                    "lambda5" => cfg.weights.lambda5 = parse_lambda(k, value)?,
                    "max_iters" => cfg.solver.max_iters = parse(k, value)?,
                    "tolerance" => cfg.solver.tolerance = parse(k, value)?,
                    "svt_tolerance" => cfg.svt_tolerance = parse(k, value)?,
                    "trials" => cfg.trials = parse(k, value)?,
                    "seed" => cfg.seed = parse(k, value)?,
                    "timing" => cfg.timing = parse_bool(k, value)?,
                    "output" => cfg.output = Some(resolve(value)),
                    _ => return Err(invalid_key(k, "unknown key".into())),
                }
                Ok(())
            })()
            .map_err(at_line)?;
        }
        if synthetic {
            cfg.dataset = Dataset::Synthetic(synth);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        if let Dataset::Synthetic(spec) = &self.dataset {
            spec.validate()?;
        }
        if self.methods.is_empty() {
            return Err(invalid("methods", "at least one method is required"));
        }
        if self.loss_levels.is_empty() {
            return Err(invalid("losses", "at least one loss level is required"));
        }
        if let Some(bad) = self.loss_levels.iter().find(|l| !(**l > 0.0 && **l < 100.0)) {
            return Err(invalid("losses", format!("levels must lie in (0, 100), got {bad}")));
        }
        if self.trials == 0 {
            return Err(invalid("trials", "must be at least 1"));
        }
        if let Some(snr) = self.snr_db {
            if snr.is_nan() || snr == f64::NEG_INFINITY {
                return Err(invalid("snr_db", format!("got {snr}")));
            }
        }
        if !(self.svt_tolerance > 0.0) {
            return Err(invalid("svt_tolerance", "must be positive"));
        }
        self.weights.validate()?;
        self.solver.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "\
# comment
dataset = synthetic
hurst = 0.7
rows = 8   # trailing comment
cols = 16
amplitude = 2
methods = pci-mdr-kron, mf(2)
losses = 20, 40
snr_db = 10
lambda3 = 0.01
lambda5 = auto
max_iters = 50
tolerance = 1e-6
trials = 3
seed = 9
timing = true
output = out.csv
";
        let cfg = ExperimentConfig::parse(text, Some(Path::new("/tmp/x"))).unwrap();
        match &cfg.dataset {
            Dataset::Synthetic(s) => assert_eq!((s.hurst, s.rows, s.cols, s.amplitude), (0.7, 8, 16, 2.0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(cfg.methods, vec![Method::PciMdrKron, Method::Mf(2)]);
        assert_eq!(cfg.loss_levels, vec![20.0, 40.0]);
        assert_eq!(cfg.snr_db, Some(10.0));
        assert_eq!(cfg.weights.lambda3, Some(0.01));
        assert_eq!(cfg.weights.lambda5, None);
        assert_eq!((cfg.solver.max_iters, cfg.solver.tolerance), (50, 1e-6));
        assert_eq!((cfg.trials, cfg.seed, cfg.timing), (3, 9, true));
        assert_eq!(cfg.output, Some(PathBuf::from("/tmp/x/out.csv")));
    }

    #[test]
    fn file_dataset_and_defaults() {
        let cfg = ExperimentConfig::parse("dataset = /data/intel.csv\n", None).unwrap();
        assert_eq!(cfg.dataset, Dataset::File("/data/intel.csv".into()));
        assert_eq!(cfg.trials, 10);
        assert_eq!(cfg.loss_levels.len(), 9);
        assert!(cfg.methods.contains(&Method::Mf(2)));
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "bogus = 1",
            "losses = 0",
            "losses = 100",
            "trials = 0",
            "hurst = 1.0",
            "methods = ",
            "seed = -1",
            "no equals sign",
            "lambda2 = -1",
        ] {
            assert!(ExperimentConfig::parse(text, None).is_err(), "{text}");
        }
        match ExperimentConfig::parse("\n\nseed = x", None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
