use crate::error::{invalid, Error, Result};
use crate::mask::DataMatrix;

/// `‖x_P − x̂_P‖² / ‖x_P‖²` restricted to `positions`.
pub fn nmse(x_true: &[f64], x_hat: &[f64], positions: &[usize]) -> Result<f64> {
    if x_true.len() != x_hat.len() {
        return Err(Error::Dimension {
            expected: x_true.len(),
            actual: x_hat.len(),
        });
    }
    if positions.is_empty() {
        return Err(invalid("positions", "must not be empty"));
    }
    let mut err = 0.0;
    let mut energy = 0.0;
    for &k in positions {
        if k >= x_true.len() {
            return Err(invalid("positions", format!("index {k} out of range")));
        }
        let d = x_true[k] - x_hat[k];
        err += d * d;
        energy += x_true[k] * x_true[k];
    }
    if energy == 0.0 {
        return Err(Error::Undefined("ground truth is zero on every scored position".into()));
    }
    Ok(err / energy)
}

/// [`nmse`] on column-major cell indices of two equally shaped matrices.
pub fn nmse_on_cells(truth: &DataMatrix, estimate: &DataMatrix, cells: &[usize]) -> Result<f64> {
    if truth.shape() != estimate.shape() {
        return Err(Error::Shape {
            expected_rows: truth.nrows(),
            expected_cols: truth.ncols(),
            rows: estimate.nrows(),
            cols: estimate.ncols(),
        });
    }
    nmse(truth.as_slice(), estimate.as_slice(), cells)
}
