use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::mask::DataMatrix;

/// `(D2 ⊗ D1)·vec(X)` evaluated as `D1·X·D2ᵀ` without forming the Kronecker product.
pub fn kron_apply(d1: &DMatrix<f64>, d2: &DMatrix<f64>, x: &DataMatrix) -> Result<DataMatrix> {
    let (rows, cols) = x.shape();
    if d1.nrows() != rows || d1.ncols() != rows || d2.nrows() != cols || d2.ncols() != cols {
        return Err(Error::Shape {
            expected_rows: rows,
            expected_cols: cols,
            rows: d1.nrows(),
            cols: d2.nrows(),
        });
    }
    Ok(d1 * x * d2.transpose())
}
