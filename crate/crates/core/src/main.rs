use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pcimdr::coherence::{coherence_table, table_csv};
use pcimdr::data::{
    dct_coefficient_profile, estimate_hurst, estimate_hurst_of_path, generate_fgn_field, parse_timestamp, read_mask_csv,
    read_matrix_csv, read_sensor_log, write_mask_csv, write_matrix_csv, NodeSelection, SensorLogRequest, SyntheticSpec,
};
use pcimdr::pipeline::{recover_with, run_sweep, ExperimentConfig, Method};
use pcimdr::solvers::SolverConfig;
use pcimdr::transforms::VectorizationOrder;
use pcimdr::{Error, Result};

#[derive(Parser)]
#[command(name = "pci-mdr", version, about = "Missing-data recovery for sensor matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coherence of the PCI operator with FT, DCT and wavelet bases.
    Coherence {
        #[arg(long)]
        n: usize,
    },
    /// Generate a field of independent fractional Brownian motion rows.
    Synth {
        #[arg(long)]
        hurst: f64,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-row Hurst exponent estimates.
    Hurst {
        #[arg(long = "in")]
        input: PathBuf,
        /// Apply R/S to the values as given instead of to their first differences.
        #[arg(long)]
        raw: bool,
    },
    /// Bucket an Intel Lab style sensor log into a node × time matrix.
    Ingest(IngestArgs),
    /// Recover the missing entries of a matrix CSV.
    Recover(RecoverArgs),
    /// Run a loss sweep described by a key = value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Report destination; overrides `output` in the config. Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write per (method, loss) mean and standard deviation.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Sorted absolute DCT coefficients of a vectorized matrix.
    Profile {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "temporal-snake")]
        order: VectorizationOrder,
    },
}

#[derive(Args)]
struct IngestArgs {
    /// Log file, plain or gzip-compressed.
    #[arg(long = "in")]
    input: PathBuf,
    /// A count k (first k motes with readings) or a comma-separated list of mote ids.
    #[arg(long)]
    nodes: String,
    /// Grid start: Unix seconds or "YYYY-MM-DD HH:MM:SS" (UTC).
    #[arg(long)]
    start: String,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 60)]
    interval: u32,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    mask_out: Option<PathBuf>,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// 0/1 CSV of cells to use; defaults to the non-empty cells of the input.
    #[arg(long)]
    mask: Option<PathBuf>,
    #[arg(long, default_value = "pci-mdr-kron")]
    method: Method,
    /// Stage-1 λ (PCI-MDR), τ (svt) or ridge λ (mf); defaults per method.
    #[arg(long)]
    lambda: Option<f64>,
    /// Denoising weight for pci-mdr-kron-denoised.
    #[arg(long)]
    lambda5: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    tolerance: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn finish(mut w: BufWriter<File>) -> Result<()> {
    w.flush()?;
    Ok(())
}

fn coherence(n: usize) -> Result<()> {
    print!("{}", table_csv(&coherence_table(n)?));
    Ok(())
}

fn synth(spec: SyntheticSpec, out: &Path) -> Result<()> {
    let x = generate_fgn_field(&spec)?;
    let mut w = create(out)?;
    write_matrix_csv(&mut w, &x, None)?;
    finish(w)
}

fn hurst(input: &Path, raw: bool) -> Result<()> {
    let csv = read_matrix_csv(File::open(input)?)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "row,hurst")?;
    let mut estimates = Vec::new();
    for i in 0..csv.values.nrows() {
        let row: Vec<f64> = (0..csv.values.ncols())
            .filter(|&j| csv.present.is_observed(i, j))
            .map(|j| csv.values[(i, j)])
            .collect();
        let h = if raw {
            estimate_hurst(&row)
        } else {
            estimate_hurst_of_path(&row)
        };
        match h {
            Ok(h) => {
                estimates.push(h);
                writeln!(out, "{i},{h}")?;
            }
            Err(e) => {
                eprintln!("row {i}: {e}");
                writeln!(out, "{i},NaN")?;
            }
        }
    }
    if estimates.is_empty() {
        return Err(Error::NoData("no row admits a Hurst estimate".into()));
    }
    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    writeln!(out, "mean,{mean}")?;
    Ok(())
}

fn parse_start(s: &str) -> Result<i64> {
    if let Ok(v) = s.trim().parse::<i64>() {
        return Ok(v);
    }
    let (date, time) = s
        .trim()
        .split_once([' ', 'T'])
        .ok_or_else(|| Error::InvalidParameter {
            name: "start",
            reason: format!("`{s}` is neither Unix seconds nor a date-time"),
        })?;
    parse_timestamp(date, time)
        .map(|t| t.floor() as i64)
        .ok_or_else(|| Error::InvalidParameter {
            name: "start",
            reason: format!("cannot parse `{s}`"),
        })
}

fn parse_nodes(s: &str) -> Result<NodeSelection> {
    let bad = || Error::InvalidParameter {
        name: "nodes",
        reason: format!("expected a count or a list of mote ids, got `{s}`"),
    };
    if s.contains(',') {
        let ids = s
            .split(',')
            .map(|id| id.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(NodeSelection::Explicit(ids))
    } else {
        Ok(NodeSelection::FirstWithCoverage(s.trim().parse().map_err(|_| bad())?))
    }
}

fn ingest(args: &IngestArgs) -> Result<()> {
    let request = SensorLogRequest {
        nodes: parse_nodes(&args.nodes)?,
        start_epoch: parse_start(&args.start)?,
        cols: args.cols,
        interval_s: args.interval,
    };
    let data = read_sensor_log(&args.input, &request)?;
    let mut w = create(&args.out)?;
    write_matrix_csv(&mut w, &data.data, Some(&data.present))?;
    finish(w)?;
    if let Some(path) = &args.mask_out {
        let mut w = create(path)?;
        write_mask_csv(&mut w, &data.present)?;
        finish(w)?;
    }
    let ids: Vec<String> = data.node_ids.iter().map(u32::to_string).collect();
    eprintln!(
        "nodes {}; {} of {} cells missing; {} malformed lines skipped",
        ids.join(","),
        data.present.count_missing(),
        data.present.len(),
        data.skipped
    );
    Ok(())
}

fn recover(args: &RecoverArgs) -> Result<()> {
    let csv = read_matrix_csv(File::open(&args.input)?)?;
    let mask = match &args.mask {
        Some(path) => {
            let mask = read_mask_csv(File::open(path)?)?;
            if (mask.rows(), mask.cols()) != (csv.present.rows(), csv.present.cols()) {
                return Err(Error::Shape {
                    expected_rows: csv.present.rows(),
                    expected_cols: csv.present.cols(),
                    rows: mask.rows(),
                    cols: mask.cols(),
                });
            }
            if let Some((i, j)) = mask.observed_cells().find(|&(i, j)| !csv.present.is_observed(i, j)) {
                return Err(Error::InvalidParameter {
                    name: "mask",
                    reason: format!("cell ({i}, {j}) is marked observed but empty in the input"),
                });
            }
            mask
        }
        None => csv.present.clone(),
    };
    let observed = mask.apply(&csv.values)?;
    let config = SolverConfig {
        max_iters: args.max_iters,
        tolerance: args.tolerance,
        seed: args.seed,
        ..Default::default()
    };
    let out = recover_with(args.method, &observed, &mask, args.lambda, args.lambda5, &config)?;
    let mut w = create(&args.out)?;
    write_matrix_csv(&mut w, &out.matrix, None)?;
    finish(w)?;
    eprintln!(
        "{}: {} observed of {} cells, {} iterations, lambda {}",
        args.method,
        mask.count_observed(),
        mask.len(),
        out.iterations,
        out.lambda_used
    );
    Ok(())
}

fn sweep(config: &Path, out: Option<&Path>, summary: Option<&Path>) -> Result<()> {
    let cfg = ExperimentConfig::from_file(config)?;
    let report = run_sweep(&cfg)?;
    for row in report.rows.iter().filter(|r| r.failed()) {
        eprintln!(
            "{} at {}% trial {}: {}",
            row.method,
            row.loss_pct,
            row.trial,
            row.error.as_deref().unwrap_or("failed")
        );
    }
    match out.map(Path::to_path_buf).or(cfg.output) {
        Some(path) => report.write_csv(path)?,
        None => report.emit_csv(io::stdout().lock())?,
    }
    if let Some(path) = summary {
        let mut w = create(path)?;
        report.emit_summary_csv(&mut w)?;
        finish(w)?;
    }
    Ok(())
}

fn profile(input: &Path, order: VectorizationOrder) -> Result<()> {
    let csv = read_matrix_csv(File::open(input)?)?;
    let coeffs = dct_coefficient_profile(&csv.values, Some(&csv.present), order)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "index,abs_coefficient")?;
    for (k, c) in coeffs.iter().enumerate() {
        writeln!(out, "{k},{c}")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Coherence { n } => coherence(n),
        Command::Synth {
            hurst,
            rows,
            cols,
            seed,
            amplitude,
            out,
        } => synth(
            SyntheticSpec {
                amplitude,
                ..SyntheticSpec::new(hurst, rows, cols, seed)
            },
            &out,
        ),
        Command::Hurst { input, raw } => hurst(&input, raw),
        Command::Ingest(args) => ingest(&args),
        Command::Recover(args) => recover(&args),
        Command::Sweep { config, out, summary } => sweep(&config, out.as_deref(), summary.as_deref()),
        Command::Profile { input, order } => profile(&input, order),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
