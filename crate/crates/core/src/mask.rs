use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Dense n×t sensor-reading matrix; rows are nodes, columns are time points.
pub type DataMatrix = DMatrix<f64>;

/// Binary n×t matrix marking which readings are present.
///
/// Cells are stored column-major so that a cell's linear index agrees with
/// [`crate::transforms::VectorizationOrder::ColumnMajor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservationMask {
    rows: usize,
    cols: usize,
    observed: Vec<bool>,
}

impl ObservationMask {
    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            observed: vec![true; rows * cols],
        }
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            observed: vec![false; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut observed = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                observed.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            observed,
        }
    }

    /// Builds a mask from a 0/1 matrix. Any entry other than exactly 0 or 1 is rejected.
    pub fn from_binary_matrix(m: &DMatrix<f64>) -> Result<Self> {
        let mut bad = None;
        let mask = Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            let v = m[(i, j)];
            if v != 0.0 && v != 1.0 {
                bad.get_or_insert((i, j, v));
            }
            v == 1.0
        });
        match bad {
            Some((i, j, v)) => Err(Error::InvalidParameter {
                name: "mask",
                reason: format!("entry ({i},{j}) = {v} is not binary"),
            }),
            None => Ok(mask),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    #[inline]
    pub fn is_observed(&self, i: usize, j: usize) -> bool {
        self.observed[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.observed[j * self.rows + i] = value;
    }

    /// Column-major flags, one per cell.
    pub fn as_slice(&self) -> &[bool] {
        &self.observed
    }

    pub fn count_observed(&self) -> usize {
        self.observed.iter().filter(|&&b| b).count()
    }

    pub fn count_missing(&self) -> usize {
        self.len() - self.count_observed()
    }

    /// Observed cells as `(row, col)` pairs in column-major order.
    pub fn observed_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let rows = self.rows;
        self.observed
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k % rows, k / rows))
    }

    pub fn complement(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            observed: self.observed.iter().map(|b| !b).collect(),
        }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| {
            if self.is_observed(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// `B ∘ X`: zeroes every unobserved entry.
    pub fn apply(&self, x: &DataMatrix) -> Result<DataMatrix> {
        self.check_shape(x)?;
        Ok(DMatrix::from_fn(self.rows, self.cols, |i, j| {
            if self.is_observed(i, j) {
                x[(i, j)]
            } else {
                0.0
            }
        }))
    }

    pub(crate) fn check_shape(&self, x: &DataMatrix) -> Result<()> {
        if x.nrows() != self.rows || x.ncols() != self.cols {
            return Err(Error::Shape {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: x.nrows(),
                cols: x.ncols(),
            });
        }
        Ok(())
    }
}
