//! Fractional Gaussian noise by circulant embedding of its exact autocovariance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::FftPlanner;

use crate::error::{invalid, Result};
use crate::mask::DataMatrix;

/// Parameters of a synthetic field whose rows are independent fractional
/// Brownian motion paths.
#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub hurst: f64,
    pub rows: usize,
    pub cols: usize,
    pub seed: u64,
    /// Standard deviation of one increment.
    pub amplitude: f64,
}

impl SyntheticSpec {
    pub fn new(hurst: f64, rows: usize, cols: usize, seed: u64) -> Self {
        Self {
            hurst,
            rows,
            cols,
            seed,
            amplitude: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hurst > 0.0 && self.hurst < 1.0) {
            return Err(invalid("hurst", format!("must lie in (0, 1), got {}", self.hurst)));
        }
        if self.rows == 0 || self.cols == 0 {
            return Err(invalid("shape", "rows and cols must be positive"));
        }
        if !(self.amplitude.is_finite()) {
            return Err(invalid("amplitude", "must be finite"));
        }
        Ok(())
    }
}

fn autocovariance(hurst: f64, k: usize) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

/// Circulant eigenvalues for `len` samples, reusable across rows.
struct Embedding {
    sqrt_eig: Vec<f64>,
    fft: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl Embedding {
    fn new(hurst: f64, len: usize) -> Self {
        let size = 2 * len;
        let mut c: Vec<Complex64> = (0..size)
            .map(|k| {
                let lag = if k <= len { k } else { size - k };
                Complex64::new(autocovariance(hurst, lag), 0.0)
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_forward(size);
        fft.process(&mut c);
        // Eigenvalues are non-negative for fGn; clamp rounding noise.
        let sqrt_eig = c.iter().map(|e| (e.re.max(0.0) / size as f64).sqrt()).collect();
        Self { sqrt_eig, fft }
    }

    fn sample(&self, len: usize, rng: &mut impl Rng) -> Vec<f64> {
        let mut w: Vec<Complex64> = self
            .sqrt_eig
            .iter()
            .map(|&s| {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                Complex64::new(a * s, b * s)
            })
            .collect();
        self.fft.process(&mut w);
        w[..len].iter().map(|c| c.re).collect()
    }
}

/// `len` unit-variance fGn samples with Hurst exponent `hurst`.
pub fn fgn_increments(hurst: f64, len: usize, seed: u64) -> Result<Vec<f64>> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(invalid("hurst", format!("must lie in (0, 1), got {hurst}")));
    }
    if len == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Embedding::new(hurst, len).sample(len, &mut rng))
}

/// Each row is the cumulative sum of an independent fGn sequence, scaled by `amplitude`.
pub fn generate_fgn_field(spec: &SyntheticSpec) -> Result<DataMatrix> {
    spec.validate()?;
    let emb = Embedding::new(spec.hurst, spec.cols);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut field = DMatrix::zeros(spec.rows, spec.cols);
    for i in 0..spec.rows {
        let mut acc = 0.0;
        for (j, g) in emb.sample(spec.cols, &mut rng).into_iter().enumerate() {
            acc += spec.amplitude * g;
            field[(i, j)] = acc;
        }
    }
    Ok(field)
}
