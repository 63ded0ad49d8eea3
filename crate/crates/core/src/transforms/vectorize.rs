use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::mask::DataMatrix;

/// How an n×t matrix is flattened into a vector of length n·t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorizationOrder {
    /// Down column 1, up column 2, down column 3, ...
    SpatialSnake,
    /// Along row 1, back along row 2, along row 3, ...
    TemporalSnake,
    /// Columns top to bottom, left to right (standard `vec`).
    ColumnMajor,
}

impl VectorizationOrder {
    pub const ALL: [VectorizationOrder; 3] = [
        VectorizationOrder::SpatialSnake,
        VectorizationOrder::TemporalSnake,
        VectorizationOrder::ColumnMajor,
    ];

    /// Vector position of cell `(i, j)` in an `rows`×`cols` matrix (0-based).
    #[inline]
    pub fn position(self, i: usize, j: usize, rows: usize, cols: usize) -> usize {
        match self {
            VectorizationOrder::ColumnMajor => j * rows + i,
            VectorizationOrder::SpatialSnake => {
                if j % 2 == 0 {
                    j * rows + i
                } else {
                    j * rows + (rows - 1 - i)
                }
            }
            VectorizationOrder::TemporalSnake => {
                if i % 2 == 0 {
                    i * cols + j
                } else {
                    i * cols + (cols - 1 - j)
                }
            }
        }
    }

    /// Inverse of [`position`](Self::position).
    #[inline]
    pub fn cell(self, k: usize, rows: usize, cols: usize) -> (usize, usize) {
        match self {
            VectorizationOrder::ColumnMajor => (k % rows, k / rows),
            VectorizationOrder::SpatialSnake => {
                let (j, r) = (k / rows, k % rows);
                if j % 2 == 0 {
                    (r, j)
                } else {
                    (rows - 1 - r, j)
                }
            }
            VectorizationOrder::TemporalSnake => {
                let (i, c) = (k / cols, k % cols);
                if i % 2 == 0 {
                    (i, c)
                } else {
                    (i, cols - 1 - c)
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VectorizationOrder::SpatialSnake => "spatial-snake",
            VectorizationOrder::TemporalSnake => "temporal-snake",
            VectorizationOrder::ColumnMajor => "column-major",
        }
    }
}

impl fmt::Display for VectorizationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VectorizationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spatial-snake" | "spatial" => Ok(VectorizationOrder::SpatialSnake),
            "temporal-snake" | "temporal" => Ok(VectorizationOrder::TemporalSnake),
            "column-major" => Ok(VectorizationOrder::ColumnMajor),
            other => Err(invalid("order", format!("unknown vectorization order `{other}`"))),
        }
    }
}

pub fn vectorize(x: &DataMatrix, order: VectorizationOrder) -> Vec<f64> {
    let (rows, cols) = x.shape();
    if order == VectorizationOrder::ColumnMajor {
        return x.as_slice().to_vec();
    }
    let mut v = vec![0.0; rows * cols];
    for j in 0..cols {
        for i in 0..rows {
            v[order.position(i, j, rows, cols)] = x[(i, j)];
        }
    }
    v
}

pub fn devectorize(
    v: &[f64],
    rows: usize,
    cols: usize,
    order: VectorizationOrder,
) -> Result<DataMatrix> {
    if v.len() != rows * cols {
        return Err(Error::Dimension {
            expected: rows * cols,
            actual: v.len(),
        });
    }
    Ok(DMatrix::from_fn(rows, cols, |i, j| {
        v[order.position(i, j, rows, cols)]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> DataMatrix {
        // [[a,b],[c,d]] with a=1, b=2, c=3, d=4
        DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0])
    }

    #[test]
    fn spatial_snake_2x2() {
        assert_eq!(
            vectorize(&abcd(), VectorizationOrder::SpatialSnake),
            vec![1.0, 3.0, 4.0, 2.0]
        );
    }

    #[test]
    fn temporal_snake_2x2() {
        assert_eq!(
            vectorize(&abcd(), VectorizationOrder::TemporalSnake),
            vec![1.0, 2.0, 4.0, 3.0]
        );
    }

    #[test]
    fn one_by_one() {
        let x = DMatrix::from_element(1, 1, 7.5);
        for o in VectorizationOrder::ALL {
            assert_eq!(vectorize(&x, o), vec![7.5]);
        }
    }

    #[test]
    fn devectorize_examples() {
        let s = devectorize(&[1.0, 3.0, 4.0, 2.0], 2, 2, VectorizationOrder::SpatialSnake).unwrap();
        assert_eq!(s, abcd());
        let t = devectorize(&[1.0, 2.0, 4.0, 3.0], 2, 2, VectorizationOrder::TemporalSnake).unwrap();
        assert_eq!(t, abcd());
    }

    #[test]
    fn devectorize_length_error() {
        let err = devectorize(&[1.0, 2.0, 3.0], 2, 2, VectorizationOrder::SpatialSnake);
        assert!(matches!(err, Err(Error::Dimension { expected: 4, actual: 3 })));
    }

    #[test]
    fn exhaustive_round_trip_and_adjacency() {
        for rows in 1..=16 {
            for cols in 1..=16 {
                let x = DMatrix::from_fn(rows, cols, |i, j| (i * 100 + j) as f64);
                for o in VectorizationOrder::ALL {
                    let v = vectorize(&x, o);
                    assert_eq!(devectorize(&v, rows, cols, o).unwrap(), x);
                    for k in 0..v.len() {
                        assert_eq!(o.position(o.cell(k, rows, cols).0, o.cell(k, rows, cols).1, rows, cols), k);
                    }
                    if o != VectorizationOrder::ColumnMajor {
                        for k in 1..v.len() {
                            let (i0, j0) = o.cell(k - 1, rows, cols);
                            let (i1, j1) = o.cell(k, rows, cols);
                            assert_eq!(i0.abs_diff(i1) + j0.abs_diff(j1), 1, "{o} {rows}x{cols} k={k}");
                        }
                    }
                }
            }
        }
    }
}
