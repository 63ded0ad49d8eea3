use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::mask::ObservationMask;

/// Split of the missing cells into originally missing (m1) and simulated
/// missing (m2). Cells are column-major grid indices, sorted ascending, so the
/// split does not depend on any vectorization order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskPartition {
    rows: usize,
    cols: usize,
    m1: Vec<usize>,
    m2: Vec<usize>,
}

impl MaskPartition {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// N = n·t.
    pub fn total(&self) -> usize {
        self.rows * self.cols
    }

    /// M = N − |m1| − |m2|.
    pub fn observed_count(&self) -> usize {
        self.total() - self.m1.len() - self.m2.len()
    }

    pub fn original_missing(&self) -> &[usize] {
        &self.m1
    }

    pub fn simulated_missing(&self) -> &[usize] {
        &self.m2
    }

    /// B: present unless in m1 or m2.
    pub fn observed_mask(&self) -> ObservationMask {
        let mut mask = ObservationMask::full(self.rows, self.cols);
        for &k in self.m1.iter().chain(&self.m2) {
            mask.set(k % self.rows, k / self.rows, false);
        }
        mask
    }
}

/// Removes `round(p·(N − |m1|))` cells, drawn uniformly without replacement from
/// the cells present in `present`.
pub fn simulate_missing(present: &ObservationMask, loss_fraction: f64, seed: u64) -> Result<MaskPartition> {
    if !(0.0..=1.0).contains(&loss_fraction) {
        return Err(invalid("loss_fraction", format!("must lie in [0, 1], got {loss_fraction}")));
    }
    let (rows, cols) = (present.rows(), present.cols());
    let mut m1 = Vec::new();
    let mut available = Vec::new();
    for (k, &obs) in present.as_slice().iter().enumerate() {
        if obs {
            available.push(k);
        } else {
            m1.push(k);
        }
    }
    let expected = loss_fraction * available.len() as f64;
    if loss_fraction > 0.0 && expected < 1.0 {
        return Err(invalid(
            "loss_fraction",
            format!("{loss_fraction} of {} available cells is less than one cell", available.len()),
        ));
    }
    let count = expected.round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m2: Vec<usize> = rand::seq::index::sample(&mut rng, available.len(), count)
        .into_iter()
        .map(|i| available[i])
        .collect();
    m2.sort_unstable();
    Ok(MaskPartition { rows, cols, m1, m2 })
}

/// `|m2| / (N − |m1|) · 100`.
pub fn data_loss_percentage(partition: &MaskPartition) -> Result<f64> {
    let available = partition.total() - partition.m1.len();
    if available == 0 {
        return Err(Error::Undefined("every cell is originally missing".into()));
    }
    Ok(partition.m2.len() as f64 / available as f64 * 100.0)
}
