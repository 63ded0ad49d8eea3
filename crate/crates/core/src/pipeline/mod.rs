//! The two-stage PCI-MDR method, baselines, loss sweeps and their reports.

mod config;
mod method;
mod report;
mod sweep;

pub use config::{Dataset, ExperimentConfig};
pub use method::{auto_lambda5, estimate_noise_sigma, pci_mdr, recover_with, Method, MethodOutput, PciMdrOutput, Structure};
pub use report::{improvement_db, MethodSummary, RecoveryReport, ReportRow};
pub use sweep::{lambda_grid, run_sweep, SWEEP_DECADES};
