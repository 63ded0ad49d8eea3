//! Singular value thresholding for nuclear-norm matrix completion.
//!
//! ```text
//! X_k     = D_tau(Y_{k-1})
//! Y_k     = Y_{k-1} + delta · P_Ω(M − X_k)
//! ```
//! with `Y_0 = k0·delta·P_Ω(M)`, `k0 = ⌈tau / (delta‖P_Ω(M)‖₂)⌉`, stopping when
//! `‖P_Ω(X_k − M)‖_F / ‖P_Ω(M)‖_F < tolerance`.

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::mask::{DataMatrix, ObservationMask};
use crate::solvers::{SolverConfig, SolverDiagnostics};

/// `tau = 5·√(n·t)`, `delta = 1.2·N/M`.
pub fn svt_defaults(rows: usize, cols: usize, observed: usize) -> (f64, f64) {
    let n = (rows * cols) as f64;
    (5.0 * n.sqrt(), 1.2 * n / observed.max(1) as f64)
}

/// Singular-value soft thresholding through the eigenvectors of the smaller
/// Gram matrix: for `Y = UΣVᵀ`, `D_tau(Y) = U·diag(1 − tau/σ)₊·UᵀY`. Only
/// singular values above `tau` matter, and those are resolved accurately by
/// the Gram eigenvalues; this is several times cheaper than a full SVD.
fn shrink(y: &DataMatrix, tau: f64) -> DataMatrix {
    let wide = y.nrows() <= y.ncols();
    let gram = if wide { y * y.transpose() } else { y.transpose() * y };
    let dim = gram.nrows();
    let eig = gram.symmetric_eigen();
    let mut proj = DMatrix::zeros(dim, dim);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let sigma = lambda.max(0.0).sqrt();
        if sigma > tau {
            let u = eig.eigenvectors.column(k);
            proj += (1.0 - tau / sigma) * u * u.transpose();
        }
    }
    if wide {
        proj * y
    } else {
        y * proj
    }
}

pub fn svt_complete(
    observed: &DataMatrix,
    mask: &ObservationMask,
    tau: f64,
    delta: f64,
    config: &SolverConfig,
) -> Result<(DataMatrix, SolverDiagnostics)> {
    config.validate()?;
    mask.check_shape(observed)?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(invalid("tau", "must be positive"));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(invalid("delta", "must be positive"));
    }
    if mask.count_observed() == 0 {
        return Err(Error::EmptyMask);
    }
    let (rows, cols) = observed.shape();
    let p_m = mask.apply(observed)?;
    let norm_pm = p_m.norm();
    let mut diag = SolverDiagnostics::default();
    if norm_pm == 0.0 {
        diag.converged = true;
        return Ok((DMatrix::zeros(rows, cols), diag));
    }

    let spectral = p_m.singular_values().max();
    let k0 = (tau / (delta * spectral)).ceil().max(1.0);
    let mut dual = &p_m * (k0 * delta);
    let mut x = DMatrix::zeros(rows, cols);
    let mut best = f64::INFINITY;
    for iter in 1..=config.max_iters {
        x = shrink(&dual, tau);
        let mut residual = 0.0;
        for j in 0..cols {
            for i in 0..rows {
                if mask.is_observed(i, j) {
                    let r = p_m[(i, j)] - x[(i, j)];
                    residual += r * r;
                    dual[(i, j)] += delta * r;
                }
            }
        }
        let rel = residual.sqrt() / norm_pm;
        if !rel.is_finite() {
            return Err(Error::NonFinite {
                solver: "svt",
                iteration: iter,
            });
        }
        diag.objective_trace.push(rel);
        diag.iterations_used = iter;
        if rel < config.tolerance {
            diag.converged = true;
            break;
        }
        best = best.min(rel);
        if rel > 10.0 * best {
            return Err(Error::Diverged {
                solver: "svt",
                residual: rel,
                minimum: best,
            });
        }
    }
    Ok((x, diag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_input_gives_zero() {
        let z = DMatrix::zeros(5, 4);
        let mask = ObservationMask::from_fn(5, 4, |i, j| (i + j) % 2 == 0);
        let (x, _) = svt_complete(&z, &mask, 10.0, 1.2, &SolverConfig::default()).unwrap();
        assert_eq!(x, z);
    }

    #[test]
    fn fully_observed_small_tau() {
        let m = DMatrix::from_fn(6, 5, |i, j| ((i + 1) * (j + 2)) as f64 * 0.1 + (i as f64).cos());
        let mask = ObservationMask::full(6, 5);
        let cfg = SolverConfig::default().with_tolerance(1e-8).with_max_iters(5000);
        let (x, diag) = svt_complete(&m, &mask, 1e-6, 1.0, &cfg).unwrap();
        assert!(diag.converged);
        assert!((x - &m).norm() / m.norm() < 1e-7);
    }

    #[test]
    fn bad_parameters() {
        let m = DMatrix::zeros(2, 2);
        let mask = ObservationMask::full(2, 2);
        let cfg = SolverConfig::default();
        assert!(svt_complete(&m, &mask, 0.0, 1.0, &cfg).is_err());
        assert!(svt_complete(&m, &mask, 1.0, -1.0, &cfg).is_err());
        assert!(matches!(
            svt_complete(&m, &ObservationMask::empty(2, 2), 1.0, 1.0, &cfg),
            Err(Error::EmptyMask)
        ));
    }

    #[test]
    fn gram_shrink_matches_svd() {
        use crate::solvers::singular_value_soft_threshold;
        let y = DMatrix::from_fn(7, 12, |i, j| ((3 * i + 5 * j) % 11) as f64 - 4.0 + (i * j) as f64 * 0.1);
        let sv = y.singular_values();
        for tau in [0.5 * sv[0], 0.5 * (sv[1] + sv[2]), 1e-3] {
            for m in [y.clone(), y.transpose()] {
                let want = singular_value_soft_threshold(&m, tau).unwrap();
                assert!((shrink(&m, tau) - &want).amax() < 1e-9 * m.amax());
            }
        }
    }

    #[test]
    fn defaults() {
        let (tau, delta) = svt_defaults(20, 20, 200);
        assert!((tau - 100.0).abs() < 1e-12);
        assert!((delta - 2.4).abs() < 1e-12);
    }
}
