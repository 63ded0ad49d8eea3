//! Mutual coherence between the PCI sensing operator and a sparsifying basis.
//!
//! `μ = √N · max_{i,j} |Ψ⁻¹(i,j)| / ‖Ψ⁻¹_j‖₂`, which lies in `[1, √N]`.
//! Because every PCI row is a canonical basis vector, this equals the classical
//! maximum normalized inner product between sensing rows and basis columns.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transforms::{BasisKind, SparsifyingBasis, WaveletFamily};

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceResult {
    pub basis: BasisKind,
    pub mu: f64,
    pub mu_over_sqrt_n: f64,
}

impl CoherenceResult {
    /// Short basis label as printed in the coherence table.
    pub fn label(&self) -> String {
        match self.basis {
            BasisKind::Fourier(_) => "ft".into(),
            BasisKind::DctFull(_) => "dct".into(),
            BasisKind::Wavelet(w, _) => w.name().into(),
            other => other.to_string(),
        }
    }
}

/// Coherence of a real synthesis matrix Ψ⁻¹.
pub fn mutual_coherence(psi_inv: &DMatrix<f64>) -> Result<f64> {
    coherence_by(psi_inv.nrows(), psi_inv.ncols(), |i, j| psi_inv[(i, j)].abs())
}

/// Coherence of a complex synthesis matrix, using entry moduli and complex column norms.
pub fn mutual_coherence_complex(psi_inv: &DMatrix<Complex64>) -> Result<f64> {
    coherence_by(psi_inv.nrows(), psi_inv.ncols(), |i, j| psi_inv[(i, j)].norm())
}

fn coherence_by(rows: usize, cols: usize, modulus: impl Fn(usize, usize) -> f64) -> Result<f64> {
    if rows != cols {
        return Err(Error::Shape {
            expected_rows: rows,
            expected_cols: rows,
            rows,
            cols,
        });
    }
    let mut best = 0.0f64;
    for j in 0..cols {
        let mut norm2 = 0.0;
        let mut peak = 0.0f64;
        for i in 0..rows {
            let a = modulus(i, j);
            norm2 += a * a;
            peak = peak.max(a);
        }
        if norm2 == 0.0 {
            return Err(Error::ZeroColumn(j));
        }
        best = best.max(peak / norm2.sqrt());
    }
    Ok((rows as f64).sqrt() * best)
}

pub fn basis_coherence(basis: &SparsifyingBasis) -> Result<CoherenceResult> {
    let mu = mutual_coherence_complex(&basis.synthesis_matrix_complex()?)?;
    Ok(CoherenceResult {
        basis: basis.kind(),
        mu,
        mu_over_sqrt_n: mu / (basis.len() as f64).sqrt(),
    })
}

/// One row per basis: FT, DCT, then the six wavelet families.
pub fn coherence_table(n: usize) -> Result<Vec<CoherenceResult>> {
    if !n.is_power_of_two() || n < 32 {
        return Err(Error::UnsupportedSize {
            size: n,
            reason: "the coherence table needs a power of two of at least 32".into(),
        });
    }
    let mut kinds = vec![BasisKind::Fourier(n), BasisKind::DctFull(n)];
    kinds.extend(WaveletFamily::ALL.iter().map(|&w| BasisKind::Wavelet(w, n)));
    kinds
        .into_iter()
        .map(|k| basis_coherence(&SparsifyingBasis::new(k)?))
        .collect()
}

/// CSV rendering: `basis,mu,mu_over_sqrtN`.
pub fn table_csv(rows: &[CoherenceResult]) -> String {
    let mut out = String::from("basis,mu,mu_over_sqrtN\n");
    for r in rows {
        out.push_str(&format!("{},{:.10},{:.10}\n", r.label(), r.mu, r.mu_over_sqrt_n));
    }
    out
}
