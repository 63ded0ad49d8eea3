use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::mask::ObservationMask;
use crate::transforms::VectorizationOrder;

/// Partial canonical identity sensing operator: an M×N row selection of `I_N`,
/// stored as the strictly increasing list of selected (0-based) positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PciOperator {
    indices: Vec<usize>,
    len: usize,
}

impl PciOperator {
    pub fn new(mut indices: Vec<usize>, len: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid("indices", format!("position {} selected twice", w[0])));
        }
        if let Some(&last) = indices.last() {
            if last >= len {
                return Err(invalid("indices", format!("position {last} out of range for length {len}")));
            }
        }
        Ok(Self { indices, len })
    }

    /// Selects the vector positions (under `order`) of every observed cell.
    pub fn from_mask(mask: &ObservationMask, order: VectorizationOrder) -> Result<Self> {
        let (rows, cols) = (mask.rows(), mask.cols());
        let mut indices: Vec<usize> = mask
            .observed_cells()
            .map(|(i, j)| order.position(i, j, rows, cols))
            .collect();
        if indices.is_empty() {
            return Err(Error::EmptyMask);
        }
        indices.sort_unstable();
        Ok(Self {
            indices,
            len: rows * cols,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// M, the number of observations.
    pub fn num_observed(&self) -> usize {
        self.indices.len()
    }

    /// N, the length of the full signal.
    pub fn signal_len(&self) -> usize {
        self.len
    }

    /// `y = Φx`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                actual: x.len(),
            });
        }
        Ok(self.indices.iter().map(|&k| x[k]).collect())
    }

    /// `Φᵀy`: scatter into a zero vector of length N.
    pub fn adjoint(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.indices.len() {
            return Err(Error::Dimension {
                expected: self.indices.len(),
                actual: y.len(),
            });
        }
        let mut x = vec![0.0; self.len];
        for (&k, &v) in self.indices.iter().zip(y) {
            x[k] = v;
        }
        Ok(x)
    }

    /// `ΦᵀΦx`: zero every unselected position in place.
    pub fn project(&self, x: &mut [f64]) {
        let mut next = self.indices.iter().peekable();
        for (k, v) in x.iter_mut().enumerate() {
            if next.peek() == Some(&&k) {
                next.next();
            } else {
                *v = 0.0;
            }
        }
    }

    /// Dense M×N matrix form.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.indices.len(), self.len);
        for (r, &k) in self.indices.iter().enumerate() {
            m[(r, k)] = 1.0;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_mask_selects_everything() {
        let m = ObservationMask::full(2, 2);
        for o in VectorizationOrder::ALL {
            let phi = PciOperator::from_mask(&m, o).unwrap();
            assert_eq!(phi.indices(), &[0, 1, 2, 3]);
            assert_eq!(phi.num_observed(), 4);
        }
    }

    #[test]
    fn single_observation() {
        let m = ObservationMask::from_fn(3, 3, |i, j| i == 0 && j == 0);
        for o in VectorizationOrder::ALL {
            assert_eq!(PciOperator::from_mask(&m, o).unwrap().indices(), &[0]);
        }
    }

    #[test]
    fn diagonal_mask_spatial_snake() {
        // Snake order of a 2x2 matrix visits (1,1),(2,1),(2,2),(1,2); diagonal cells sit at 1 and 3 (1-based).
        let m = ObservationMask::from_fn(2, 2, |i, j| i == j);
        let phi = PciOperator::from_mask(&m, VectorizationOrder::SpatialSnake).unwrap();
        assert_eq!(phi.indices(), &[0, 2]);
    }

    #[test]
    fn empty_mask_rejected() {
        let m = ObservationMask::empty(2, 2);
        assert!(matches!(
            PciOperator::from_mask(&m, VectorizationOrder::ColumnMajor),
            Err(Error::EmptyMask)
        ));
    }

    #[test]
    fn apply_and_adjoint_examples() {
        let phi = PciOperator::new(vec![1], 2).unwrap();
        assert_eq!(phi.apply(&[5.0, 7.0]).unwrap(), vec![7.0]);
        assert_eq!(phi.adjoint(&[7.0]).unwrap(), vec![0.0, 7.0]);
        assert!(phi.apply(&[1.0]).is_err());
        assert!(phi.adjoint(&[1.0, 2.0]).is_err());
        let id = PciOperator::new(vec![0, 1, 2], 3).unwrap();
        assert_eq!(id.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn construction_validates() {
        assert!(PciOperator::new(vec![1, 1], 3).is_err());
        assert!(PciOperator::new(vec![3], 3).is_err());
        assert_eq!(PciOperator::new(vec![2, 0], 3).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn one_per_row_at_most_one_per_column() {
        let phi = PciOperator::new(vec![0, 3, 4], 6).unwrap();
        let m = phi.to_matrix();
        for r in 0..3 {
            assert_eq!(m.row(r).sum(), 1.0);
        }
        for c in 0..6 {
            assert!(m.column(c).sum() <= 1.0);
        }
        assert_eq!(&m * m.transpose(), DMatrix::identity(3, 3));
    }

    #[test]
    fn project_masks_in_place() {
        let phi = PciOperator::new(vec![0, 2], 4).unwrap();
        let mut x = vec![1.0, 2.0, 3.0, 4.0];
        phi.project(&mut x);
        assert_eq!(x, vec![1.0, 0.0, 3.0, 0.0]);
    }
}
