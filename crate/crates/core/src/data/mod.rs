//! Dataset ingestion, synthetic fields, the masking protocol, noise and metrics.

mod csvio;
mod fgn;
mod hurst;
mod ingest;
mod masking;
mod metrics;
mod noise;
mod profile;

pub use csvio::{read_mask_csv, read_matrix_csv, write_mask_csv, write_matrix_csv, MatrixCsv};
pub use fgn::{fgn_increments, generate_fgn_field, SyntheticSpec};
pub use hurst::{estimate_hurst, estimate_hurst_of_path};
pub use ingest::{parse_timestamp, parse_sensor_log, read_sensor_log, IngestedData, NodeSelection, SensorLogRequest};
pub use masking::{data_loss_percentage, simulate_missing, MaskPartition};
pub use metrics::{nmse, nmse_on_cells};
pub use noise::{add_noise, add_noise_on};
pub use profile::{dct_coefficient_profile, fill_along_path};
