use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Error, Result};
use crate::mask::{DataMatrix, ObservationMask};

/// `X + W` with i.i.d. Gaussian `W` of variance `mean(X²)/10^(snr_db/10)`.
/// `snr_db = +∞` returns `X` unchanged.
pub fn add_noise(x: &DataMatrix, snr_db: f64, seed: u64) -> Result<DataMatrix> {
    add_noise_on(x, &ObservationMask::full(x.nrows(), x.ncols()), snr_db, seed)
}

/// Like [`add_noise`], but signal power is measured over, and noise added to,
/// the cells `present` marks; the remaining cells are copied unchanged.
pub fn add_noise_on(x: &DataMatrix, present: &ObservationMask, snr_db: f64, seed: u64) -> Result<DataMatrix> {
    present.check_shape(x)?;
    if snr_db == f64::INFINITY {
        return Ok(x.clone());
    }
    if !snr_db.is_finite() {
        return Err(invalid("snr_db", format!("must be finite or +inf, got {snr_db}")));
    }
    let flags = present.as_slice();
    let (sum, count) = x
        .iter()
        .zip(flags)
        .filter(|(_, &p)| p)
        .fold((0.0, 0usize), |(s, c), (v, _)| (s + v * v, c + 1));
    let power = if count == 0 { 0.0 } else { sum / count as f64 };
    if power == 0.0 {
        return Err(Error::Undefined("signal power is zero".into()));
    }
    let sd = (power / 10f64.powf(snr_db / 10.0)).sqrt();
    let normal = Normal::new(0.0, sd).map_err(|e| invalid("snr_db", e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = x.clone();
    for (v, &p) in out.iter_mut().zip(flags) {
        if p {
            *v += normal.sample(&mut rng);
        }
    }
    Ok(out)
}
