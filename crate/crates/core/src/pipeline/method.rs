use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::mask::{DataMatrix, ObservationMask};
use crate::solvers::{
    denoise_low_rank, mf_complete, svt_complete, svt_defaults, CsProblem, RegularizationWeights, SolverConfig,
};
use crate::transforms::{BasisKind, VectorizationOrder};

/// Recovery methods compared by the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    PciMdrSpatial,
    PciMdrTemporal,
    PciMdrKron,
    PciMdrKronDenoised,
    Svt,
    /// Rank-r alternating least squares.
    Mf(usize),
}

impl Method {
    /// The stage-1 structure of a PCI-MDR variant, `None` for the baselines.
    pub fn structure(self) -> Option<Structure> {
        match self {
            Method::PciMdrSpatial => Some(Structure::Vectorized(VectorizationOrder::SpatialSnake)),
            Method::PciMdrTemporal => Some(Structure::Vectorized(VectorizationOrder::TemporalSnake)),
            Method::PciMdrKron | Method::PciMdrKronDenoised => Some(Structure::Kronecker),
            Method::Svt | Method::Mf(_) => None,
        }
    }

    pub fn denoises(self) -> bool {
        self == Method::PciMdrKronDenoised
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::PciMdrSpatial => f.write_str("pci-mdr-spatial"),
            Method::PciMdrTemporal => f.write_str("pci-mdr-temporal"),
            Method::PciMdrKron => f.write_str("pci-mdr-kron"),
            Method::PciMdrKronDenoised => f.write_str("pci-mdr-kron-denoised"),
            Method::Svt => f.write_str("svt"),
            Method::Mf(r) => write!(f, "mf({r})"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts the display names; `mf(r)` may also be written `mf:r`, and bare `mf` means rank 1.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "pci-mdr-spatial" => Method::PciMdrSpatial,
            "pci-mdr-temporal" => Method::PciMdrTemporal,
            "pci-mdr-kron" => Method::PciMdrKron,
            "pci-mdr-kron-denoised" => Method::PciMdrKronDenoised,
            "svt" => Method::Svt,
            "mf" => Method::Mf(1),
            _ => {
                let rank = s
                    .strip_prefix("mf(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("mf:"))
                    .ok_or_else(|| invalid("method", format!("unknown method `{s}`")))?;
                match rank.trim().parse() {
                    Ok(r) if r >= 1 => Method::Mf(r),
                    _ => return Err(invalid("method", format!("bad rank in `{s}`"))),
                }
            }
        })
    }
}

/// How stage 1 exploits sparsity: a full-vector DCT of a snake vectorization,
/// or the separable DCT⊗DCT of the matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Vectorized(VectorizationOrder),
    Kronecker,
}

impl Structure {
    pub(crate) fn basis(self, rows: usize, cols: usize) -> (BasisKind, VectorizationOrder) {
        match self {
            Structure::Vectorized(order) => (BasisKind::DctFull(rows * cols), order),
            Structure::Kronecker => (BasisKind::KroneckerDct { rows, cols }, VectorizationOrder::ColumnMajor),
        }
    }

    /// The stage-1 weight: λ3 for a vectorized DCT, λ4 for Kronecker.
    pub(crate) fn weight(self, weights: &RegularizationWeights) -> Option<f64> {
        match self {
            Structure::Vectorized(_) => weights.lambda3,
            Structure::Kronecker => weights.lambda4,
        }
    }

    pub(crate) fn problem(self, observed: &DataMatrix, mask: &ObservationMask) -> Result<CsProblem> {
        let (kind, order) = self.basis(observed.nrows(), observed.ncols());
        CsProblem::new(observed, mask, kind, order)
    }
}

#[derive(Clone, Debug)]
pub struct PciMdrOutput {
    pub matrix: DataMatrix,
    /// Stage-1 output (equal to `matrix` when not denoising).
    pub stage1: DataMatrix,
    pub lambda: f64,
    /// `None` when stage 2 was skipped.
    pub lambda5: Option<f64>,
    /// FISTA iterations over all continuation stages.
    pub iterations: usize,
}

/// Robust noise level from adjacent observed pairs along each row:
/// `median|x(i,j+1) − x(i,j)| / (√2·0.6745)`. Returns 0 when no pair exists.
pub fn estimate_noise_sigma(observed: &DataMatrix, mask: &ObservationMask) -> f64 {
    let mut diffs = Vec::new();
    for i in 0..observed.nrows() {
        for j in 1..observed.ncols() {
            if mask.is_observed(i, j - 1) && mask.is_observed(i, j) {
                diffs.push((observed[(i, j)] - observed[(i, j - 1)]).abs());
            }
        }
    }
    if diffs.is_empty() {
        return 0.0;
    }
    let mid = diffs.len() / 2;
    let (_, median, _) = diffs.select_nth_unstable_by(mid, f64::total_cmp);
    *median / (std::f64::consts::SQRT_2 * 0.6745)
}

/// `λ5 = 2σ̂(√n + √t)`: the stage-2 threshold λ5/2 then sits at the expected
/// largest singular value of an n×t Gaussian noise matrix.
pub fn auto_lambda5(observed: &DataMatrix, mask: &ObservationMask) -> f64 {
    let (n, t) = observed.shape();
    2.0 * estimate_noise_sigma(observed, mask) * ((n as f64).sqrt() + (t as f64).sqrt())
}

/// Two-stage recovery. Stage 1 solves the ℓ1 problem in the DCT basis chosen by
/// `structure`; stage 2, when `denoise` is set, applies the low-rank denoiser.
/// Unset weights fall back to `1e-4·max|y|` (stage 1) and [`auto_lambda5`].
pub fn pci_mdr(
    observed: &DataMatrix,
    mask: &ObservationMask,
    weights: &RegularizationWeights,
    structure: Structure,
    denoise: bool,
    config: &SolverConfig,
) -> Result<PciMdrOutput> {
    weights.validate()?;
    let problem = structure.problem(observed, mask)?;
    let lambda = structure.weight(weights).unwrap_or_else(|| problem.default_lambda());
    let sol = problem.solve(lambda, config)?;
    let (matrix, lambda5) = if denoise {
        let l5 = weights.lambda5.unwrap_or_else(|| auto_lambda5(observed, mask));
        (denoise_low_rank(&sol.matrix, l5)?, Some(l5))
    } else {
        (sol.matrix.clone(), None)
    };
    Ok(PciMdrOutput {
        matrix,
        stage1: sol.matrix,
        lambda,
        lambda5,
        iterations: sol.total_iterations,
    })
}

/// Result of a single [`recover_with`] run.
#[derive(Clone, Debug)]
pub struct MethodOutput {
    pub matrix: DataMatrix,
    pub iterations: usize,
    /// The stage-1 λ for PCI-MDR (λ5 for the denoised variant), τ for SVT,
    /// the ridge weight for MF.
    pub lambda_used: f64,
}

/// Runs one method with one parameter setting. `lambda` is the method's main
/// weight (stage-1 λ, SVT τ or MF ridge λ); `None` picks its default.
/// `lambda5` only affects the denoised variant.
pub fn recover_with(
    method: Method,
    observed: &DataMatrix,
    mask: &ObservationMask,
    lambda: Option<f64>,
    lambda5: Option<f64>,
    config: &SolverConfig,
) -> Result<MethodOutput> {
    match method {
        Method::Svt => {
            let (tau, delta) = svt_defaults(mask.rows(), mask.cols(), mask.count_observed());
            let tau = lambda.unwrap_or(tau);
            let (matrix, diag) = svt_complete(observed, mask, tau, delta, config)?;
            Ok(MethodOutput {
                matrix,
                iterations: diag.iterations_used,
                lambda_used: tau,
            })
        }
        Method::Mf(rank) => {
            let lambda = lambda.unwrap_or_else(|| 1e-4 * mask.apply(observed).map(|m| m.norm()).unwrap_or(0.0));
            let (matrix, diag) = mf_complete(observed, mask, rank, lambda, config)?;
            Ok(MethodOutput {
                matrix,
                iterations: diag.iterations_used,
                lambda_used: lambda,
            })
        }
        _ => {
            let structure = method.structure().expect("PCI-MDR method");
            let mut weights = RegularizationWeights {
                lambda5,
                ..Default::default()
            };
            match structure {
                Structure::Vectorized(_) => weights.lambda3 = lambda,
                Structure::Kronecker => weights.lambda4 = lambda,
            }
            let out = pci_mdr(observed, mask, &weights, structure, method.denoises(), config)?;
            Ok(MethodOutput {
                lambda_used: out.lambda5.unwrap_or(out.lambda),
                matrix: out.matrix,
                iterations: out.iterations,
            })
        }
    }
}
