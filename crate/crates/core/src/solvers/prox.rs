use nalgebra::SVD;

use crate::error::{invalid, Result};
use crate::mask::DataMatrix;

#[inline]
pub fn soft_threshold_scalar(v: f64, tau: f64) -> f64 {
    if v > tau {
        v - tau
    } else if v < -tau {
        v + tau
    } else {
        0.0
    }
}

/// Elementwise `sign(v)·max(|v| − tau, 0)`.
pub fn soft_threshold(v: &[f64], tau: f64) -> Vec<f64> {
    v.iter().map(|&x| soft_threshold_scalar(x, tau)).collect()
}

/// `U·S_tau(Σ)·Vᵀ`, the proximal map of `tau·‖·‖_*`.
pub fn singular_value_soft_threshold(x: &DataMatrix, tau: f64) -> Result<DataMatrix> {
    if !(tau >= 0.0) {
        return Err(invalid("tau", "must be non-negative"));
    }
    if x.is_empty() {
        return Ok(x.clone());
    }
    let mut svd = SVD::new(x.clone(), true, true);
    svd.singular_values
        .iter_mut()
        .for_each(|s| *s = soft_threshold_scalar(*s, tau));
    Ok(svd
        .recompose()
        .expect("singular vectors were requested"))
}

/// Exact minimizer of `‖X̂ − X‖_F² + λ5‖X‖_*`, which is singular-value
/// soft-thresholding at `λ5/2` (no ½ in front of the fidelity term).
pub fn denoise_low_rank(x_hat: &DataMatrix, lambda5: f64) -> Result<DataMatrix> {
    if !(lambda5 >= 0.0) {
        return Err(invalid("lambda5", "must be non-negative"));
    }
    if lambda5 == 0.0 {
        return Ok(x_hat.clone());
    }
    singular_value_soft_threshold(x_hat, lambda5 / 2.0)
}
