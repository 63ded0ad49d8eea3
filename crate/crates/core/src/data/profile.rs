use crate::error::{Error, Result};
use crate::mask::{DataMatrix, ObservationMask};
use crate::transforms::{vectorize, DctPlan, VectorizationOrder};

/// Fills unobserved entries of `v` by linear interpolation between the nearest
/// observed neighbours; gaps at either end copy the nearest observed value.
pub fn fill_along_path(v: &mut [f64], observed: &[bool]) -> Result<()> {
    let known: Vec<usize> = (0..v.len()).filter(|&k| observed[k]).collect();
    let (Some(&first), Some(&last)) = (known.first(), known.last()) else {
        return Err(Error::EmptyMask);
    };
    for k in 0..first {
        v[k] = v[first];
    }
    for k in last + 1..v.len() {
        v[k] = v[last];
    }
    for w in known.windows(2) {
        let (a, b) = (w[0], w[1]);
        let span = (b - a) as f64;
        for k in a + 1..b {
            let frac = (k - a) as f64 / span;
            v[k] = v[a] + frac * (v[b] - v[a]);
        }
    }
    Ok(())
}

/// Absolute full-vector DCT coefficients of `x` vectorized under `order`, sorted
/// in descending order. Cells marked missing in `present` are first filled by
/// linear interpolation along the vectorization path.
pub fn dct_coefficient_profile(
    x: &DataMatrix,
    present: Option<&ObservationMask>,
    order: VectorizationOrder,
) -> Result<Vec<f64>> {
    let mut v = vectorize(x, order);
    if let Some(mask) = present {
        mask.check_shape(x)?;
        let (rows, cols) = x.shape();
        let flags: Vec<bool> = (0..v.len())
            .map(|k| {
                let (i, j) = order.cell(k, rows, cols);
                mask.is_observed(i, j)
            })
            .collect();
        fill_along_path(&mut v, &flags)?;
    }
    DctPlan::new(v.len()).forward(&mut v);
    let mut mags: Vec<f64> = v.into_iter().map(f64::abs).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    Ok(mags)
}
