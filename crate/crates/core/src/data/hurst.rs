//! Rescaled-range (R/S) Hurst exponent estimation.

use crate::error::{invalid, Error, Result};

const MIN_LEN: usize = 64;
const MIN_WINDOW: usize = 8;

/// Mean R/S over non-overlapping blocks of `window` samples; `None` if every block is flat.
fn mean_rescaled_range(series: &[f64], window: usize) -> Option<f64> {
    let mut total = 0.0;
    let mut count = 0usize;
    let mut dev = vec![0.0; window];
    for block in series.chunks_exact(window) {
        let mean = block.iter().sum::<f64>() / window as f64;
        let mut acc = 0.0;
        let mut var = 0.0;
        for (d, &v) in dev.iter_mut().zip(block) {
            acc += v - mean;
            *d = acc;
            var += (v - mean) * (v - mean);
        }
        let sd = (var / window as f64).sqrt();
        if sd > 0.0 {
            let (lo, hi) = dev.iter().fold((0.0f64, 0.0f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
            total += (hi - lo) / sd;
            count += 1;
        }
    }
    (count > 0).then(|| total / count as f64)
}

/// Slope of `log(R/S)` against `log(window)` over dyadic windows `8, 16, …, len/4`.
///
/// The series is treated as the noise (increment) process; for a path such as a
/// temperature trace use [`estimate_hurst_of_path`].
pub fn estimate_hurst(series: &[f64]) -> Result<f64> {
    if series.len() < MIN_LEN {
        return Err(invalid("series", format!("need at least {MIN_LEN} samples, got {}", series.len())));
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(invalid("series", "contains non-finite values"));
    }
    let mut points = Vec::new();
    let mut window = MIN_WINDOW;
    while window <= series.len() / 4 {
        if let Some(rs) = mean_rescaled_range(series, window) {
            if rs > 0.0 {
                points.push(((window as f64).ln(), rs.ln()));
            }
        }
        window *= 2;
    }
    if points.len() < 2 {
        return Err(Error::Undefined("R/S is undefined for a (piecewise) constant series".into()));
    }
    let n = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let (sxy, sxx) = points
        .iter()
        .fold((0.0, 0.0), |(sxy, sxx), (x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    Ok(sxy / sxx)
}

/// Hurst exponent of a path, estimated from its first differences.
pub fn estimate_hurst_of_path(path: &[f64]) -> Result<f64> {
    let diffs: Vec<f64> = path.windows(2).map(|w| w[1] - w[0]).collect();
    estimate_hurst(&diffs)
}
