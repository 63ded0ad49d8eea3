//! Proximal and alternating solvers for the recovery problems.

mod als;
mod cs;
mod fista;
mod prox;
mod svt;

pub use als::mf_complete;
pub use cs::{recover_cs, CsProblem, CsSolution};
pub use fista::{fista_l1, fista_l1_from};
pub use prox::{denoise_low_rank, singular_value_soft_threshold, soft_threshold, soft_threshold_scalar};
pub use svt::{svt_complete, svt_defaults};

use crate::error::{invalid, Result};

/// Step size for gradient-type solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepSize {
    /// Use the solver's own safe choice (1 for FISTA on PCI ∘ orthonormal operators).
    Auto,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Relative-change stopping threshold.
    pub tolerance: f64,
    pub step_size: StepSize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            tolerance: 1e-8,
            step_size: StepSize::Auto,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(invalid("max_iters", "must be at least 1"));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid("tolerance", "must be positive"));
        }
        if let StepSize::Fixed(s) = self.step_size {
            if !(s > 0.0 && s.is_finite()) {
                return Err(invalid("step_size", "must be a positive finite number"));
            }
        }
        Ok(())
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolverDiagnostics {
    pub iterations_used: usize,
    /// Objective after each iteration; `len() == iterations_used`.
    pub objective_trace: Vec<f64>,
    pub converged: bool,
}

/// Regularization weights λ1..λ5. `None` means "choose automatically".
///
/// λ1: column DCT, λ2: row DCT, λ3: full-vector DCT on a snake vectorization,
/// λ4: Kronecker DCT, λ5: low-rank denoising.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RegularizationWeights {
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub lambda3: Option<f64>,
    pub lambda4: Option<f64>,
    pub lambda5: Option<f64>,
}

impl RegularizationWeights {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda3", self.lambda3),
            ("lambda4", self.lambda4),
            ("lambda5", self.lambda5),
        ] {
            if let Some(v) = v {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(invalid(name, format!("must be a finite non-negative number, got {v}")));
                }
            }
        }
        Ok(())
    }
}
