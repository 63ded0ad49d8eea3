//! Monotone FISTA for `min_s ½‖y − A s‖₂² + λ‖s‖₁`.

use crate::error::{invalid, Error, Result};
use crate::solvers::prox::soft_threshold_scalar;
use crate::solvers::{SolverConfig, SolverDiagnostics, StepSize};

fn objective(residual: &[f64], s: &[f64], lambda: f64) -> f64 {
    0.5 * residual.iter().map(|r| r * r).sum::<f64>() + lambda * s.iter().map(|v| v.abs()).sum::<f64>()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// FISTA from `s = 0`. `apply` maps coefficients (length `dim`) to measurements
/// (length `y.len()`); `adjoint` is its transpose. The operator norm must not exceed
/// `1/step` (1 for `StepSize::Auto`).
pub fn fista_l1(
    apply: impl Fn(&[f64]) -> Result<Vec<f64>>,
    adjoint: impl Fn(&[f64]) -> Result<Vec<f64>>,
    y: &[f64],
    dim: usize,
    lambda: f64,
    config: &SolverConfig,
) -> Result<(Vec<f64>, SolverDiagnostics)> {
    fista_l1_from(apply, adjoint, y, &vec![0.0; dim], lambda, config)
}

/// Warm-started variant of [`fista_l1`].
pub fn fista_l1_from(
    apply: impl Fn(&[f64]) -> Result<Vec<f64>>,
    adjoint: impl Fn(&[f64]) -> Result<Vec<f64>>,
    y: &[f64],
    init: &[f64],
    lambda: f64,
    config: &SolverConfig,
) -> Result<(Vec<f64>, SolverDiagnostics)> {
    config.validate()?;
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", "must be a finite non-negative number"));
    }
    let step = match config.step_size {
        StepSize::Auto => 1.0,
        StepSize::Fixed(s) => s,
    };
    let m = y.len();
    let dim = init.len();

    // x: accepted iterate, ax = A x - y (residual), v: extrapolated point, av its residual.
    let mut x = init.to_vec();
    let mut ax = apply(&x)?;
    if ax.len() != m {
        return Err(Error::Dimension {
            expected: m,
            actual: ax.len(),
        });
    }
    ax.iter_mut().zip(y).for_each(|(a, b)| *a -= b);
    let mut fx = objective(&ax, &x, lambda);
    let mut v = x.clone();
    let mut av = ax.clone();
    let mut t = 1.0f64;

    let mut diag = SolverDiagnostics::default();
    let mut z = vec![0.0; dim];
    for iter in 1..=config.max_iters {
        let grad = adjoint(&av)?;
        if grad.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                actual: grad.len(),
            });
        }
        for ((zi, vi), gi) in z.iter_mut().zip(&v).zip(&grad) {
            *zi = soft_threshold_scalar(vi - step * gi, step * lambda);
        }
        let mut az = apply(&z)?;
        az.iter_mut().zip(y).for_each(|(a, b)| *a -= b);
        let fz = objective(&az, &z, lambda);
        if !fz.is_finite() {
            return Err(Error::NonFinite {
                solver: "fista",
                iteration: iter,
            });
        }

        let change = dist(&z, &x);
        if fz <= fx {
            // Adaptive restart: drop the momentum when it points against the step.
            let against: f64 = (0..dim).map(|i| (v[i] - z[i]) * (z[i] - x[i])).sum();
            if against > 0.0 {
                t = 1.0;
            }
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            // v = z + ((t-1)/t_next)(z - x_prev)
            let beta = (t - 1.0) / t_next;
            for i in 0..dim {
                v[i] = z[i] + beta * (z[i] - x[i]);
            }
            for i in 0..m {
                av[i] = az[i] + beta * (az[i] - ax[i]);
            }
            std::mem::swap(&mut x, &mut z);
            std::mem::swap(&mut ax, &mut az);
            fx = fz;
            t = t_next;
        } else {
            // x stays; v = x + (t/t_next)(z - x)
            let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
            let gamma = t / t_next;
            for i in 0..dim {
                v[i] = x[i] + gamma * (z[i] - x[i]);
            }
            for i in 0..m {
                av[i] = ax[i] + gamma * (az[i] - ax[i]);
            }
            t = t_next;
        }
        diag.objective_trace.push(fx);
        diag.iterations_used = iter;

        let scale = norm(&x);
        if change <= config.tolerance * scale || (scale == 0.0 && change == 0.0) {
            diag.converged = true;
            break;
        }
    }
    Ok((x, diag))
}
