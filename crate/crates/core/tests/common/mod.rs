#![allow(dead_code)]

use nalgebra::DMatrix;
use pcimdr::{DataMatrix, ObservationMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DataMatrix {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Each cell observed with probability `p`; at least one cell is always observed.
pub fn random_mask(rng: &mut ChaCha8Rng, rows: usize, cols: usize, p: f64) -> ObservationMask {
    let mut mask = ObservationMask::from_fn(rows, cols, |_, _| rng.gen_bool(p));
    if mask.count_observed() == 0 {
        mask.set(rng.gen_range(0..rows), rng.gen_range(0..cols), true);
    }
    mask
}

pub fn rank_one(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DataMatrix {
    let u = gaussian_vec(rng, rows);
    let v = gaussian_vec(rng, cols);
    DMatrix::from_fn(rows, cols, |i, j| u[i] * v[j])
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Zeroes the unobserved cells.
pub fn observe(x: &DataMatrix, mask: &ObservationMask) -> DataMatrix {
    mask.apply(x).expect("shapes match")
}

/// Column-major indices of the unobserved cells.
pub fn missing_cells(mask: &ObservationMask) -> Vec<usize> {
    mask.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &o)| !o)
        .map(|(k, _)| k)
        .collect()
}
