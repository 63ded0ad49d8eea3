//! Vectorization schemes, orthonormal transforms and the PCI sensing operator.

mod basis;
mod dct;
mod kron;
mod pci;
mod vectorize;
pub mod wavelet;

pub use basis::{inverse_fourier_matrix, BasisKind, SparsifyingBasis};
pub use dct::{dct_matrix, DctPlan};
pub use kron::kron_apply;
pub use pci::PciOperator;
pub use vectorize::{devectorize, vectorize, VectorizationOrder};
pub use wavelet::{wavelet_matrix, WaveletFamily};
