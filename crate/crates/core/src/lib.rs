//! Missing-data recovery for sensor matrices.
//!
//! Missing readings are recovered by compressive sensing: the observed entries
//! are a row selection (partial canonical identity) of the vectorized data,
//! the data is sparse in a DCT basis, and an ℓ1 solve fills the gaps. An
//! optional second stage shrinks singular values of the estimate. Nuclear-norm
//! (SVT) and alternating-least-squares completion are provided as baselines.

pub mod coherence;
pub mod data;
pub mod error;
pub mod mask;
pub mod pipeline;
pub mod solvers;
pub mod transforms;

pub use error::{Error, Result};
pub use mask::{DataMatrix, ObservationMask};
