//! ℓ1 recovery of a partially observed matrix in an orthonormal basis.
//!
//! The analysis-form penalty `‖Ψx‖₁` is solved in synthesis form: with
//! `x = Ψ⁻¹s` the problem becomes `min ½‖y − ΦΨ⁻¹s‖² + λ‖s‖₁`, which FISTA
//! handles with unit step since `‖ΦΨ⁻¹‖₂ ≤ 1`.
//!
//! The rows of `ΦΨ⁻¹` are orthonormal, so the first gradient step already fits
//! the data exactly and afterwards the iterate drifts by about λ per step. Small
//! λ are therefore reached by continuation: warm-started solves at
//! `λ_max, λ_max/10, …` down to the target.

use crate::error::{Error, Result};
use crate::mask::{DataMatrix, ObservationMask};
use crate::solvers::fista::fista_l1_from;
use crate::solvers::{SolverConfig, SolverDiagnostics};
use crate::transforms::{devectorize, BasisKind, PciOperator, SparsifyingBasis, VectorizationOrder};

const CONTINUATION_FACTOR: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct CsSolution {
    pub lambda: f64,
    pub matrix: DataMatrix,
    pub coefficients: Vec<f64>,
    /// Diagnostics of the final solve at `lambda`.
    pub diagnostics: SolverDiagnostics,
    /// FISTA iterations summed over all continuation stages.
    pub total_iterations: usize,
}

/// A recovery problem with its sensing operator and basis built once, so several
/// λ values can be solved (and warm-started) without rebuilding plans.
#[derive(Clone, Debug)]
pub struct CsProblem {
    rows: usize,
    cols: usize,
    order: VectorizationOrder,
    basis: SparsifyingBasis,
    pci: PciOperator,
    y: Vec<f64>,
}

impl CsProblem {
    /// `observed` supplies values at the cells `mask` marks present; other cells are ignored.
    /// Matrix-shaped bases always use column-major vectorization.
    pub fn new(
        observed: &DataMatrix,
        mask: &ObservationMask,
        kind: BasisKind,
        order: VectorizationOrder,
    ) -> Result<Self> {
        mask.check_shape(observed)?;
        let (rows, cols) = observed.shape();
        match kind {
            BasisKind::Fourier(_) => return Err(Error::ComplexBasis(kind.to_string())),
            BasisKind::DctSpatial { rows: r, cols: c }
            | BasisKind::DctTemporal { rows: r, cols: c }
            | BasisKind::KroneckerDct { rows: r, cols: c }
                if (r, c) != (rows, cols) =>
            {
                return Err(Error::Shape {
                    expected_rows: rows,
                    expected_cols: cols,
                    rows: r,
                    cols: c,
                })
            }
            _ if kind.len() != rows * cols => {
                return Err(Error::Dimension {
                    expected: rows * cols,
                    actual: kind.len(),
                })
            }
            _ => {}
        }
        let order = if kind.is_matrix_shaped() {
            VectorizationOrder::ColumnMajor
        } else {
            order
        };
        let pci = PciOperator::from_mask(mask, order)?;
        let y = pci
            .indices()
            .iter()
            .map(|&k| {
                let (i, j) = order.cell(k, rows, cols);
                observed[(i, j)]
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            order,
            basis: SparsifyingBasis::new(kind)?,
            pci,
            y,
        })
    }

    pub fn measurements(&self) -> &[f64] {
        &self.y
    }

    pub fn order(&self) -> VectorizationOrder {
        self.order
    }

    pub fn pci(&self) -> &PciOperator {
        &self.pci
    }

    /// `1e-4·‖Φᵀy‖∞`.
    pub fn default_lambda(&self) -> f64 {
        1e-4 * self.y.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `‖Aᵀy‖∞`: any λ at or above this gives `s = 0`.
    pub fn lambda_max(&self) -> Result<f64> {
        Ok(self.adjoint(&self.y)?.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }

    fn apply(&self, s: &[f64]) -> Result<Vec<f64>> {
        let x = self.basis.inverse(s)?;
        self.pci.apply(&x)
    }

    fn adjoint(&self, r: &[f64]) -> Result<Vec<f64>> {
        let mut x = self.pci.adjoint(r)?;
        self.basis.forward_in_place(&mut x)?;
        Ok(x)
    }

    pub fn solve(&self, lambda: f64, config: &SolverConfig) -> Result<CsSolution> {
        let mut path = self.solve_path(&[lambda], config)?;
        Ok(path.pop().expect("one lambda in, one solution out"))
    }

    /// Solves for every λ in `lambdas`, largest first, each warm-started from the
    /// previous solution. Solutions are returned in descending-λ order.
    pub fn solve_path(&self, lambdas: &[f64], config: &SolverConfig) -> Result<Vec<CsSolution>> {
        let mut targets = lambdas.to_vec();
        if let Some(bad) = targets.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
            return Err(crate::error::invalid("lambda", format!("must be finite and non-negative, got {bad}")));
        }
        targets.sort_by(|a, b| b.total_cmp(a));
        let n = self.rows * self.cols;
        let mut current = self.lambda_max()?;
        let mut s = vec![0.0; n];
        let mut out = Vec::with_capacity(targets.len());
        let mut total = 0;
        for target in targets {
            let diagnostics = loop {
                let stage = (current * CONTINUATION_FACTOR).max(target);
                let (next, diag) = self.fista(stage, config, &s)?;
                s = next;
                total += diag.iterations_used;
                current = stage;
                if stage <= target {
                    break diag;
                }
            };
            let x = self.basis.inverse(&s)?;
            out.push(CsSolution {
                lambda: target,
                matrix: devectorize(&x, self.rows, self.cols, self.order)?,
                coefficients: s.clone(),
                diagnostics,
                total_iterations: total,
            });
        }
        Ok(out)
    }

    /// Plain FISTA at a single λ from `init`, without continuation.
    pub fn fista(&self, lambda: f64, config: &SolverConfig, init: &[f64]) -> Result<(Vec<f64>, SolverDiagnostics)> {
        fista_l1_from(|s| self.apply(s), |r| self.adjoint(r), &self.y, init, lambda, config)
    }
}

/// One-shot recovery: build Φ from `mask` under `order`, solve with FISTA, and
/// return the full matrix `devectorize(Ψ⁻¹ŝ)`.
pub fn recover_cs(
    observed: &DataMatrix,
    mask: &ObservationMask,
    kind: BasisKind,
    lambda: f64,
    order: VectorizationOrder,
    config: &SolverConfig,
) -> Result<(DataMatrix, SolverDiagnostics)> {
    let sol = CsProblem::new(observed, mask, kind, order)?.solve(lambda, config)?;
    Ok((sol.matrix, sol.diagnostics))
}
