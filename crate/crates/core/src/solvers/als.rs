//! Alternating ridge least squares for `X ≈ UVᵀ` on observed entries.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::mask::{DataMatrix, ObservationMask};
use crate::solvers::{SolverConfig, SolverDiagnostics};

fn objective(
    observed: &DataMatrix,
    mask: &ObservationMask,
    u: &DMatrix<f64>,
    v: &DMatrix<f64>,
    lambda: f64,
) -> f64 {
    let mut fit = 0.0;
    for (i, j) in mask.observed_cells() {
        let r = u.row(i).dot(&v.row(j)) - observed[(i, j)];
        fit += r * r;
    }
    fit + lambda * (u.norm_squared() + v.norm_squared())
}

/// Solves every row of `target` given the fixed factor `fixed`:
/// `(Fₒᵀ Fₒ + λI) w = Fₒᵀ yₒ` over that row's observed entries.
fn solve_rows(
    target: &mut DMatrix<f64>,
    fixed: &DMatrix<f64>,
    lambda: f64,
    cells: impl Fn(usize) -> Vec<(usize, f64)>,
) -> Result<()> {
    let r = fixed.ncols();
    for i in 0..target.nrows() {
        let obs = cells(i);
        if obs.is_empty() && lambda == 0.0 {
            return Err(invalid("lambda", format!("slice {i} has no observations and lambda = 0")));
        }
        let mut gram = DMatrix::<f64>::identity(r, r) * lambda;
        let mut rhs = DVector::<f64>::zeros(r);
        for &(k, y) in &obs {
            let f = fixed.row(k);
            for a in 0..r {
                rhs[a] += f[a] * y;
                for b in 0..r {
                    gram[(a, b)] += f[a] * f[b];
                }
            }
        }
        let w = match gram.clone().cholesky() {
            Some(c) => c.solve(&rhs),
            // Singular only when λ = 0 and the slice underdetermines the factor;
            // take the minimum-norm solution.
            None => gram
                .pseudo_inverse(1e-12)
                .map_err(|e| invalid("lambda", e.to_string()))?
                * rhs,
        };
        target.row_mut(i).copy_from(&w.transpose());
    }
    Ok(())
}

/// Rank-`rank` completion. The objective
/// `‖B∘(UVᵀ) − Y‖_F² + λ(‖U‖_F² + ‖V‖_F²)` is recorded after every full
/// alternation and never increases.
pub fn mf_complete(
    observed: &DataMatrix,
    mask: &ObservationMask,
    rank: usize,
    lambda: f64,
    config: &SolverConfig,
) -> Result<(DataMatrix, SolverDiagnostics)> {
    config.validate()?;
    mask.check_shape(observed)?;
    let (rows, cols) = observed.shape();
    if rank == 0 || rank > rows.min(cols) {
        return Err(invalid("rank", format!("must be in 1..={}", rows.min(cols))));
    }
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", "must be a finite non-negative number"));
    }
    let m = mask.count_observed();
    if m == 0 {
        return Err(Error::EmptyMask);
    }

    let mean_abs = mask.observed_cells().map(|(i, j)| observed[(i, j)].abs()).sum::<f64>() / m as f64;
    let scale = (mean_abs / rank as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut u = DMatrix::from_fn(rows, rank, |_, _| rng.gen::<f64>() * scale);
    let mut v = DMatrix::from_fn(cols, rank, |_, _| rng.gen::<f64>() * scale);

    let by_row: Vec<Vec<(usize, f64)>> = (0..rows)
        .map(|i| (0..cols).filter(|&j| mask.is_observed(i, j)).map(|j| (j, observed[(i, j)])).collect())
        .collect();
    let by_col: Vec<Vec<(usize, f64)>> = (0..cols)
        .map(|j| (0..rows).filter(|&i| mask.is_observed(i, j)).map(|i| (i, observed[(i, j)])).collect())
        .collect();

    let mut diag = SolverDiagnostics::default();
    let mut prev = objective(observed, mask, &u, &v, lambda);
    for iter in 1..=config.max_iters {
        solve_rows(&mut u, &v, lambda, |i| by_row[i].clone())?;
        solve_rows(&mut v, &u, lambda, |j| by_col[j].clone())?;
        let obj = objective(observed, mask, &u, &v, lambda);
        if !obj.is_finite() {
            return Err(Error::NonFinite {
                solver: "als",
                iteration: iter,
            });
        }
        diag.objective_trace.push(obj);
        diag.iterations_used = iter;
        if (prev - obj).abs() <= config.tolerance * prev.max(f64::MIN_POSITIVE) {
            diag.converged = true;
            break;
        }
        prev = obj;
    }
    Ok((&u * v.transpose(), diag))
}
