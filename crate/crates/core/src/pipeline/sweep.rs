use std::time::Instant;

use nalgebra::DMatrix;

use crate::data::{add_noise_on, generate_fgn_field, nmse_on_cells, read_matrix_csv, simulate_missing, SyntheticSpec};
use crate::error::Result;
use crate::mask::{DataMatrix, ObservationMask};
use crate::pipeline::method::auto_lambda5;
use crate::pipeline::{Dataset, ExperimentConfig, Method, RecoveryReport, ReportRow, Structure};
use crate::solvers::{denoise_low_rank, mf_complete, svt_complete, svt_defaults, CsSolution};

/// λ grids span `center·10^k` for `k` in `-SWEEP_DECADES..=SWEEP_DECADES`.
pub const SWEEP_DECADES: i32 = 3;

/// The logarithmic grid around `center`, ascending.
pub fn lambda_grid(center: f64) -> Vec<f64> {
    (-SWEEP_DECADES..=SWEEP_DECADES).map(|k| center * 10f64.powi(k)).collect()
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream seeds for each (purpose, trial, loss index).
fn mix(seed: u64, purpose: u64, trial: usize, loss: usize) -> u64 {
    [purpose, trial as u64, loss as u64]
        .into_iter()
        .fold(splitmix(seed), |acc, v| splitmix(acc ^ v))
}

const FIELD: u64 = 1;
const NOISE: u64 = 2;
const MASK: u64 = 3;
const MF: u64 = 4;

struct Outcome {
    estimate: DataMatrix,
    iterations: usize,
    lambda: f64,
}

/// State shared by the methods of one (loss, trial) cell.
struct Cell<'a> {
    truth: &'a DataMatrix,
    observed: DataMatrix,
    mask: ObservationMask,
    scored: &'a [usize],
    kron_path: Option<Vec<CsSolution>>,
}

impl Cell<'_> {
    fn score(&self, estimate: &DataMatrix) -> f64 {
        nmse_on_cells(self.truth, estimate, self.scored).unwrap_or(f64::INFINITY)
    }

    fn best(&self, candidates: impl IntoIterator<Item = (f64, Outcome)>) -> Option<Outcome> {
        candidates
            .into_iter()
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, o)| o)
    }

    fn stage1_path(&mut self, structure: Structure, fixed: Option<f64>, cfg: &ExperimentConfig) -> Result<Vec<CsSolution>> {
        if structure == Structure::Kronecker && fixed.is_none() {
            if let Some(path) = &self.kron_path {
                return Ok(path.clone());
            }
        }
        let problem = structure.problem(&self.observed, &self.mask)?;
        let lambdas = match fixed {
            Some(l) => vec![l],
            None => lambda_grid(problem.default_lambda()),
        };
        let path = problem.solve_path(&lambdas, &cfg.solver)?;
        if structure == Structure::Kronecker && fixed.is_none() {
            self.kron_path = Some(path.clone());
        }
        Ok(path)
    }

    fn run(&mut self, method: Method, cfg: &ExperimentConfig, trial: usize, loss_idx: usize) -> Result<Outcome> {
        match method {
            Method::Svt => {
                let (tau, delta) = svt_defaults(self.mask.rows(), self.mask.cols(), self.mask.count_observed());
                let solver = cfg.solver.clone().with_tolerance(cfg.svt_tolerance);
                let (estimate, diag) = svt_complete(&self.observed, &self.mask, tau, delta, &solver)?;
                Ok(Outcome {
                    estimate,
                    iterations: diag.iterations_used,
                    lambda: tau,
                })
            }
            Method::Mf(rank) => {
                let solver = cfg.solver.clone().with_seed(mix(cfg.seed, MF, trial, loss_idx));
                let center = 1e-4 * self.observed.norm();
                let mut runs = Vec::new();
                for lambda in lambda_grid(center) {
                    let (estimate, diag) = mf_complete(&self.observed, &self.mask, rank, lambda, &solver)?;
                    runs.push((
                        self.score(&estimate),
                        Outcome {
                            estimate,
                            iterations: diag.iterations_used,
                            lambda,
                        },
                    ));
                }
                Ok(self.best(runs).expect("grid is nonempty"))
            }
            _ => {
                let structure = method.structure().expect("PCI-MDR method");
                let path = self.stage1_path(structure, structure.weight(&cfg.weights), cfg)?;
                let mut runs = Vec::new();
                for sol in path {
                    if method.denoises() {
                        let l5s = match cfg.weights.lambda5 {
                            Some(l5) => vec![l5],
                            None => lambda_grid(auto_lambda5(&self.observed, &self.mask)),
                        };
                        for l5 in l5s {
                            let estimate = denoise_low_rank(&sol.matrix, l5)?;
                            runs.push((
                                self.score(&estimate),
                                Outcome {
                                    estimate,
                                    iterations: sol.total_iterations,
                                    lambda: l5,
                                },
                            ));
                        }
                    } else {
                        runs.push((
                            self.score(&sol.matrix),
                            Outcome {
                                estimate: sol.matrix,
                                iterations: sol.total_iterations,
                                lambda: sol.lambda,
                            },
                        ));
                    }
                }
                Ok(self.best(runs).expect("path is nonempty"))
            }
        }
    }
}

fn load(cfg: &ExperimentConfig, trial: usize) -> Result<(DataMatrix, ObservationMask)> {
    match &cfg.dataset {
        Dataset::Synthetic(spec) => {
            let spec = SyntheticSpec {
                seed: mix(cfg.seed, FIELD, trial, 0),
                ..*spec
            };
            let x = generate_fgn_field(&spec)?;
            let present = ObservationMask::full(x.nrows(), x.ncols());
            Ok((x, present))
        }
        Dataset::File(path) => {
            let csv = read_matrix_csv(std::fs::File::open(path)?)?;
            Ok((csv.values, csv.present))
        }
    }
}

/// Runs every (loss, trial, method) combination.
///
/// Per trial the dataset is loaded (a fresh synthetic field each trial) and,
/// if `snr_db` is set, noise is added to the present cells. Per loss level the
/// simulated-missing cells m2 are drawn from the present cells; methods see
/// only the remaining observed cells and are scored against the clean data on
/// m2 alone. Unless fixed by the config, each method's weight is picked from a
/// logarithmic grid by NMSE. A failing method yields a row with `nmse = NaN`.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<RecoveryReport> {
    cfg.validate()?;
    let mut report = RecoveryReport::default();
    let mut push = |method: Method, loss_pct: f64, trial: usize, outcome: std::result::Result<(f64, usize, f64), String>, secs: f64| {
        let row = match outcome {
            Ok((nmse, iterations, lambda_used)) => ReportRow {
                method,
                loss_pct,
                trial,
                nmse,
                iterations,
                wall_time_s: secs,
                lambda_used,
                error: None,
            },
            Err(e) => ReportRow {
                method,
                loss_pct,
                trial,
                nmse: f64::NAN,
                iterations: 0,
                wall_time_s: secs,
                lambda_used: f64::NAN,
                error: Some(e),
            },
        };
        report.rows.push(row);
    };

    for trial in 0..cfg.trials {
        let (truth, present) = load(cfg, trial)?;
        let noisy = match cfg.snr_db {
            Some(snr) => add_noise_on(&truth, &present, snr, mix(cfg.seed, NOISE, trial, 0))?,
            None => truth.clone(),
        };
        for (li, &loss_pct) in cfg.loss_levels.iter().enumerate() {
            let part = match simulate_missing(&present, loss_pct / 100.0, mix(cfg.seed, MASK, trial, li)) {
                Ok(p) => p,
                Err(e) => {
                    for &m in &cfg.methods {
                        push(m, loss_pct, trial, Err(e.to_string()), 0.0);
                    }
                    continue;
                }
            };
            let mask = part.observed_mask();
            let observed = DMatrix::from_fn(truth.nrows(), truth.ncols(), |i, j| {
                if mask.is_observed(i, j) {
                    noisy[(i, j)]
                } else {
                    0.0
                }
            });
            let mut cell = Cell {
                truth: &truth,
                observed,
                mask,
                scored: part.simulated_missing(),
                kron_path: None,
            };
            for &method in &cfg.methods {
                let start = Instant::now();
                let result = cell.run(method, cfg, trial, li).and_then(|o| {
                    let nmse = nmse_on_cells(&truth, &o.estimate, part.simulated_missing())?;
                    Ok((nmse, o.iterations, o.lambda))
                });
                let secs = if cfg.timing { start.elapsed().as_secs_f64() } else { 0.0 };
                push(method, loss_pct, trial, result.map_err(|e| e.to_string()), secs);
            }
        }
    }
    report.sort_canonical(&cfg.methods);
    Ok(report)
}
